//! The four o-polynomial characterizations and the exact aggregate sums
//! that connect them.
//!
//! Notation: `N(b, a) = |{x : F(x) + b x = a}|`, quantified over `b != 0`.
//! The count side sums polynomials in `N`; the spectral side sums products
//! of `W_F(b v, v)`. The two are tied by
//! `walsh_excess(F) = 2^(2n) * count_deficiency(F)`, both zero exactly for
//! o-polynomials.
//!
//! Every aggregate is an `i128`: the largest intermediate, the cube sum of
//! the transformed slope rows, stays below `2^113` at `n = 16`.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::field::{Elem, Field};
use crate::func::{is_permutation_table, VecFunc};
use crate::geometry;
use crate::spectrum::{fwht_in_place, walsh_at, TraceDual, WalshRows};

/// Entries held in memory at once by the streaming spectral pass (per
/// buffer). At the default, `n <= 11` completes in a single pass.
pub const DEFAULT_MEMORY_BUDGET: usize = 1 << 22;

/// Largest `n` accepted by [`corollary_excess_oracle`].
pub const COROLLARY_ORACLE_MAX_N: u32 = 3;

fn pow2(e: u32) -> i128 {
    1i128 << e
}

/// Division that must be exact; a remainder means a bug upstream.
fn exact_div(num: i128, den: i128, what: &str) -> i128 {
    assert!(num % den == 0, "{what}: {num} is not divisible by {den}");
    num / den
}

pub fn count_solutions(func: &VecFunc, b: Elem, a: Elem) -> u64 {
    let field = func.field();
    field
        .elements()
        .filter(|&x| func.eval(x) ^ field.mul(b, x) == a)
        .count() as u64
}

/// Count-side aggregates over all `a` and all `b != 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct CountMoments {
    /// `sum N`
    pub first: i128,
    /// `sum N^2`
    pub second: i128,
    /// `sum N^3`
    pub third: i128,
    /// `sum N (N - 2)^2`
    pub deficiency: i128,
}

impl CountMoments {
    fn add(self, other: CountMoments) -> CountMoments {
        CountMoments {
            first: self.first + other.first,
            second: self.second + other.second,
            third: self.third + other.third,
            deficiency: self.deficiency + other.deficiency,
        }
    }

    pub fn get(&self, j: u32) -> Result<i128> {
        match j {
            1 => Ok(self.first),
            2 => Ok(self.second),
            3 => Ok(self.third),
            _ => Err(Error::UnsupportedMoment(j)),
        }
    }
}

fn solution_histogram(func: &VecFunc, b: Elem, hist: &mut [u32]) {
    let field = func.field();
    hist.iter_mut().for_each(|h| *h = 0);
    for (x, &y) in func.table().iter().enumerate() {
        hist[(y ^ field.mul(b, x as Elem)) as usize] += 1;
    }
}

/// One histogram of `F(x) + b x` per nonzero `b`.
pub fn count_moments(func: &VecFunc) -> CountMoments {
    let q = func.field().order();
    (1..q as Elem)
        .into_par_iter()
        .map_init(
            || vec![0u32; q],
            |hist, b| {
                solution_histogram(func, b, hist);
                hist.iter().fold(CountMoments::default(), |acc, &c| {
                    let c = c as i128;
                    acc.add(CountMoments {
                        first: c,
                        second: c * c,
                        third: c * c * c,
                        deficiency: c * (c - 2) * (c - 2),
                    })
                })
            },
        )
        .reduce(CountMoments::default, CountMoments::add)
}

/// `sum_{a, b != 0} N (N - 2)^2`; zero iff `F` is an o-polynomial.
pub fn count_deficiency(func: &VecFunc) -> i128 {
    count_moments(func).deficiency
}

/// Every `F(x) + b x = a` with `b != 0` has 0 or 2 solutions.
pub fn check_direct(func: &VecFunc) -> bool {
    let q = func.field().order();
    (1..q as Elem).into_par_iter().all(|b| {
        let mut hist = vec![0u32; q];
        solution_histogram(func, b, &mut hist);
        hist.iter().all(|&c| c == 0 || c == 2)
    })
}

/// `F` and all of its slope functions `G_s` are permutations.
pub fn check_slopes(func: &VecFunc) -> bool {
    if !func.is_permutation() {
        return false;
    }
    let inverses = func.field().inverse_table();
    func.field()
        .elements()
        .collect::<Vec<_>>()
        .into_par_iter()
        .all(|s| is_permutation_table(&func.slope_table(s, &inverses)))
}

/// `[W_F(b v, v) for v in GF(2^n)]` straight from the character sums,
/// without a transform. O(2^(2n)).
pub fn slope_component(func: &VecFunc, b: Elem) -> Vec<i64> {
    let field = func.field();
    let dual = TraceDual::new(field);
    field
        .elements()
        .map(|v| {
            let (mv, mu) = (dual.mask(v), dual.mask(field.mul(b, v)));
            func.table()
                .iter()
                .enumerate()
                .map(|(x, &y)| {
                    let bits = (y & mv).count_ones() + (x as u32 & mu).count_ones();
                    if bits & 1 == 0 {
                        1
                    } else {
                        -1
                    }
                })
                .sum()
        })
        .collect()
}

/// `sum_v W_F(b v, v)^2`, including `v = 0`.
pub fn square_sum(func: &VecFunc, b: Elem) -> i128 {
    slope_component(func, b)
        .iter()
        .map(|&w| (w as i128) * (w as i128))
        .sum()
}

/// Exact spectral aggregates of one function.
///
/// For each `b` the vector `f_b(v) = W_F(b v, v)` is assembled from streamed
/// Walsh rows; its square sum is taken directly and its self-correlation
/// `sum_{v1, v2} f_b(v1) f_b(v2) f_b(v1 + v2)` as `2^-n sum_w fhat_b(w)^3`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpectralSums {
    field: Field,
    /// `triples[b] = sum_{v1, v2} f_b(v1) f_b(v2) f_b(v1 + v2)`
    triples: Vec<i128>,
    /// `squares[b] = sum_v f_b(v)^2`
    squares: Vec<i128>,
    /// `W_F(0, v)`
    zero_row: Vec<i64>,
}

impl SpectralSums {
    pub fn compute(func: &VecFunc) -> SpectralSums {
        SpectralSums::with_budget(func, DEFAULT_MEMORY_BUDGET)
    }

    /// Streams Walsh rows in blocks of `b` values so that no buffer holds
    /// more than about `budget` entries. Rows are recomputed once per block.
    pub fn with_budget(func: &VecFunc, budget: usize) -> SpectralSums {
        let field = *func.field();
        let q = field.order();
        let per_buffer = (budget / q).clamp(1, q);
        let rows = WalshRows::new(func);
        let mut triples = vec![0i128; q];
        let mut squares = vec![0i128; q];
        let mut zero_row = Vec::new();

        for b_start in (0..q).step_by(per_buffer) {
            let b_count = per_buffer.min(q - b_start);
            let mut slopes = vec![0i64; b_count * q];
            for v_start in (0..q).step_by(per_buffer) {
                let v_end = (v_start + per_buffer).min(q);
                let chunk: Vec<Vec<i64>> = (v_start..v_end)
                    .into_par_iter()
                    .map(|v| rows.row(v as Elem))
                    .collect();
                slopes.par_chunks_mut(q).enumerate().for_each(|(i, f_b)| {
                    let b = (b_start + i) as Elem;
                    for (k, row) in chunk.iter().enumerate() {
                        let v = (v_start + k) as Elem;
                        f_b[v as usize] = row[field.mul(b, v) as usize];
                    }
                });
            }
            if b_start == 0 {
                // f_0(v) = W(0, v)
                zero_row = slopes[..q].to_vec();
            }
            let block: Vec<(i128, i128)> = slopes
                .par_chunks_mut(q)
                .map(|f_b| {
                    let square: i128 = f_b.iter().map(|&w| (w as i128) * (w as i128)).sum();
                    fwht_in_place(f_b).expect("field order is a power of two");
                    let cubes: i128 = f_b.iter().map(|&w| (w as i128).pow(3)).sum();
                    (exact_div(cubes, q as i128, "triple sum"), square)
                })
                .collect();
            for (i, (triple, square)) in block.into_iter().enumerate() {
                triples[b_start + i] = triple;
                squares[b_start + i] = square;
            }
        }
        SpectralSums {
            field,
            triples,
            squares,
            zero_row,
        }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    /// Triple sum over `b != 0`.
    pub fn triple_sum(&self) -> i128 {
        self.triples[1..].iter().sum()
    }

    /// The `b = 0` term, `sum_{v1, v2} W(0, v1) W(0, v2) W(0, v1 + v2)`.
    pub fn triple_at_zero(&self) -> i128 {
        self.triples[0]
    }

    /// `sum_v W_F(b v, v)^2` for one `b`.
    pub fn square_sum(&self, b: Elem) -> i128 {
        self.squares[b as usize]
    }

    /// `sum_{b != 0} sum_v W_F(b v, v)^2`.
    pub fn square_sum_total(&self) -> i128 {
        self.squares[1..].iter().sum()
    }

    pub fn zero_row(&self) -> &[i64] {
        &self.zero_row
    }

    /// `sum_{v != 0} W_F(0, v)^2`.
    pub fn zero_row_energy(&self) -> i128 {
        self.zero_row[1..]
            .iter()
            .map(|&w| (w as i128) * (w as i128))
            .sum()
    }

    /// `2^(n+2) sum_{v != 0} W(0, v)^2 - 2^(4n+2) + 2^(3n+2)`, shared by the
    /// excess and its all-b form.
    fn tail(&self) -> i128 {
        let n = self.field.n();
        pow2(n + 2) * self.zero_row_energy() - pow2(4 * n + 2) + pow2(3 * n + 2)
    }

    pub fn walsh_excess(&self) -> i128 {
        self.triple_sum() + self.tail()
    }

    /// Same quantity as [`Self::walsh_excess`], written with the triple sum
    /// over every `b` and the `b = 0` term taken out by a direct double loop.
    pub fn corollary_excess(&self) -> i128 {
        let all_b: i128 = self.triples.iter().sum();
        all_b - zero_row_triple(&self.zero_row) + self.tail()
    }

    /// Moment `sum_{a, b != 0} N^j` from the spectral side.
    pub fn moment(&self, j: u32) -> Result<i128> {
        let n = self.field.n();
        match j {
            1 => Ok((pow2(n) - 1) * pow2(n)),
            2 => Ok(exact_div(self.square_sum_total(), pow2(n), "second moment")),
            3 => Ok(exact_div(self.triple_sum(), pow2(2 * n), "third moment")),
            _ => Err(Error::UnsupportedMoment(j)),
        }
    }

    /// Both constant identities that hold for o-polynomials.
    pub fn constant_sums_hold(&self) -> bool {
        let n = self.field.n();
        let q1 = pow2(n) - 1;
        self.square_sum_total() == q1 * pow2(2 * n + 1) && self.triple_sum() == q1 * pow2(3 * n + 2)
    }
}

fn zero_row_triple(w0: &[i64]) -> i128 {
    let mut acc = 0i128;
    for (v1, &a) in w0.iter().enumerate() {
        if a == 0 {
            continue;
        }
        for (v2, &b) in w0.iter().enumerate() {
            acc += a as i128 * b as i128 * w0[v1 ^ v2] as i128;
        }
    }
    acc
}

pub fn triple_sum(func: &VecFunc) -> i128 {
    SpectralSums::compute(func).triple_sum()
}

/// Nonnegative for every `F`; zero exactly for o-polynomials.
pub fn walsh_excess(func: &VecFunc) -> i128 {
    SpectralSums::compute(func).walsh_excess()
}

pub fn check_walsh(func: &VecFunc) -> bool {
    walsh_excess(func) == 0
}

pub fn check_remark(func: &VecFunc) -> bool {
    SpectralSums::compute(func).constant_sums_hold()
}

pub fn moment_sum(func: &VecFunc, j: u32) -> Result<i128> {
    if !(1..=3).contains(&j) {
        return Err(Error::UnsupportedMoment(j));
    }
    SpectralSums::compute(func).moment(j)
}

pub fn corollary_excess(func: &VecFunc) -> i128 {
    SpectralSums::compute(func).corollary_excess()
}

/// The all-b form of the excess evaluated combinatorially: a loop over
/// `v1, v2, x1, x2, x3` restricted to `v1 x1 + v2 x2 + (v1 + v2) x3 = 0`,
/// with all `W(0, v)` taken from the definition. Costs `2^(5n)`.
pub fn corollary_excess_oracle(func: &VecFunc) -> Result<i128> {
    let field = func.field();
    let n = field.n();
    if n > COROLLARY_ORACLE_MAX_N {
        return Err(Error::ResourceCap {
            what: "combinatorial excess evaluation",
            n,
            max: COROLLARY_ORACLE_MAX_N,
            hint: "use the spectral path",
        });
    }
    let mut character_sum = 0i128;
    for v1 in field.elements() {
        for v2 in field.elements() {
            let v3 = v1 ^ v2;
            for x1 in field.elements() {
                for x2 in field.elements() {
                    for x3 in field.elements() {
                        let lin = field.mul(v1, x1) ^ field.mul(v2, x2) ^ field.mul(v3, x3);
                        if lin != 0 {
                            continue;
                        }
                        let arg = field.mul(v1, func.eval(x1))
                            ^ field.mul(v2, func.eval(x2))
                            ^ field.mul(v3, func.eval(x3));
                        character_sum += 1 - 2 * field.trace(arg) as i128;
                    }
                }
            }
        }
    }
    let w0: Vec<i64> = field.elements().map(|v| walsh_at(func, 0, v)).collect();
    let energy: i128 = w0[1..].iter().map(|&w| (w as i128) * (w as i128)).sum();
    Ok(
        pow2(n) * character_sum - zero_row_triple(&w0) + pow2(n + 2) * energy - pow2(4 * n + 2)
            + pow2(3 * n + 2),
    )
}

/// Verdicts and exact sums from every characterization of one function.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckReport {
    pub n: u32,
    pub modulus: u32,
    pub verdict_direct: bool,
    pub verdict_slopes: bool,
    pub verdict_walsh: bool,
    pub verdict_constants: bool,
    pub verdict_geometry: Option<bool>,
    pub count_deficiency: i128,
    pub walsh_excess: i128,
    pub square_sum_total: i128,
    pub triple_sum: i128,
    /// Spectral-side moments `j = 1, 2, 3`.
    pub moments: [i128; 3],
}

impl CheckReport {
    pub fn is_o_polynomial(&self) -> bool {
        self.verdict_direct
    }
}

/// Runs every characterization and cross-checks them. Disagreement is
/// reported as [`Error::Inconsistent`].
pub fn full_report(func: &VecFunc, include_geometry: bool) -> Result<CheckReport> {
    let field = *func.field();
    let n = field.n();
    if include_geometry && n > geometry::ARC_TEST_MAX_N {
        return Err(geometry::arc_cap_error(n));
    }
    let verdict_direct = check_direct(func);
    let counts = count_moments(func);
    let verdict_slopes = check_slopes(func);
    let sums = SpectralSums::compute(func);
    let walsh_excess = sums.walsh_excess();
    let verdict_geometry = if include_geometry {
        Some(geometry::is_hyperoval(
            &field,
            &geometry::hyperoval_points(func),
        )?)
    } else {
        None
    };
    let moments = [sums.moment(1)?, sums.moment(2)?, sums.moment(3)?];
    let report = CheckReport {
        n,
        modulus: field.modulus(),
        verdict_direct,
        verdict_slopes,
        verdict_walsh: walsh_excess == 0,
        verdict_constants: sums.constant_sums_hold(),
        verdict_geometry,
        count_deficiency: counts.deficiency,
        walsh_excess,
        square_sum_total: sums.square_sum_total(),
        triple_sum: sums.triple_sum(),
        moments,
    };

    let verdicts = [
        report.verdict_slopes,
        report.verdict_walsh,
        report.verdict_constants,
        report.verdict_geometry.unwrap_or(verdict_direct),
        counts.deficiency == 0,
    ];
    if verdicts.iter().any(|&v| v != verdict_direct) {
        return Err(Error::Inconsistent(format!(
            "verdicts disagree: {report:?}"
        )));
    }
    if walsh_excess != pow2(2 * n) * counts.deficiency || walsh_excess < 0 {
        return Err(Error::Inconsistent(format!(
            "walsh excess {walsh_excess} != 2^{} * {}",
            2 * n,
            counts.deficiency
        )));
    }
    if moments != [counts.first, counts.second, counts.third] {
        return Err(Error::Inconsistent(format!(
            "spectral moments {moments:?} differ from counted {counts:?}"
        )));
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf8() -> Field {
        Field::new(3, 0b1011).unwrap()
    }

    fn mono(n: u32, d: u64) -> VecFunc {
        VecFunc::from_monomial(Field::with_default_modulus(n).unwrap(), d).unwrap()
    }

    #[test]
    fn solution_counts() {
        let f = gf8();
        let sq = VecFunc::from_monomial(f, 2).unwrap();
        let id = VecFunc::identity(f);
        assert_eq!(count_solutions(&sq, 1, 0), 2);
        assert_eq!(count_solutions(&id, 1, 0), 8);
        assert_eq!(count_solutions(&id, 1, 1), 0);
    }

    #[test]
    fn identity_anchor_values() {
        let id = VecFunc::identity(gf8());
        assert_eq!(count_deficiency(&id), 336);
        let sums = SpectralSums::compute(&id);
        assert_eq!(sums.triple_sum(), 35840);
        assert_eq!(sums.walsh_excess(), 21504);
        assert_eq!(sums.corollary_excess(), 21504);
        // a permutation, so the square total already meets its constant
        assert_eq!(sums.square_sum_total(), 896);
        assert_eq!(sums.square_sum(1), 512);
        assert_eq!(square_sum(&id, 1), 512);
        assert_eq!(sums.moment(1), Ok(56));
        assert_eq!(sums.moment(3), Ok(560));
        assert_eq!(sums.moment(4), Err(Error::UnsupportedMoment(4)));
        assert!(!sums.constant_sums_hold());
        assert_eq!(moment_sum(&id, 0), Err(Error::UnsupportedMoment(0)));
    }

    #[test]
    fn square_is_o_polynomial() {
        for n in 2..=6 {
            let sq = mono(n, 2);
            assert_eq!(count_deficiency(&sq), 0, "n = {n}");
            assert!(check_direct(&sq));
            assert!(check_slopes(&sq));
            assert!(check_walsh(&sq));
            assert!(check_remark(&sq));
        }
        let sq = mono(3, 2);
        for b in 1..8 {
            assert_eq!(square_sum(&sq, b), 128);
        }
        assert_eq!(moment_sum(&sq, 2), Ok(112));
        assert_eq!(triple_sum(&sq), 14336);
    }

    #[test]
    fn square_sum_at_zero_for_permutations() {
        let f = gf8();
        for d in [1, 2, 3, 4, 5, 6] {
            let func = VecFunc::from_monomial(f, d).unwrap();
            assert_eq!(square_sum(&func, 0), 64);
        }
    }

    #[test]
    fn verdicts_on_examples() {
        assert!(check_direct(&mono(5, 6)));
        assert!(check_slopes(&mono(5, 2)));
        assert!(!check_direct(&mono(4, 1)));
        assert!(!check_slopes(&mono(3, 1)));
        assert!(!check_slopes(&mono(3, 3)));
        assert!(!check_walsh(&mono(3, 3)));
        let zero = VecFunc::from_table(gf8(), vec![0; 8]).unwrap();
        assert!(!check_walsh(&zero));
        assert!(!check_remark(&zero));
        assert!(check_walsh(&mono(5, 2)));
        assert_eq!(walsh_excess(&mono(4, 2)), 0);
    }

    #[test]
    fn streaming_blocks_do_not_change_sums() {
        for n in 2..=6 {
            let func = mono(n, 3);
            let whole = SpectralSums::compute(&func);
            for budget in [1, 7, 1 << n, 3 << n] {
                assert_eq!(SpectralSums::with_budget(&func, budget), whole);
            }
        }
    }

    #[test]
    fn all_b_forms_agree() {
        for d in 0..8 {
            let func = mono(3, d);
            assert_eq!(corollary_excess_oracle(&func), Ok(walsh_excess(&func)));
        }
        assert_eq!(corollary_excess_oracle(&mono(3, 2)), Ok(0));
        assert!(matches!(
            corollary_excess_oracle(&mono(4, 2)),
            Err(Error::ResourceCap { max: 3, .. })
        ));
    }

    #[test]
    fn reports() {
        let r = full_report(&mono(4, 2), false).unwrap();
        assert!(r.verdict_direct && r.verdict_slopes && r.verdict_walsh && r.verdict_constants);
        assert_eq!(r.verdict_geometry, None);
        assert_eq!(r.walsh_excess, 0);

        let r = full_report(&mono(3, 1), true).unwrap();
        assert!(!r.verdict_direct && !r.verdict_slopes && !r.verdict_walsh);
        assert_eq!(r.verdict_geometry, Some(false));
        assert_eq!(r.count_deficiency, 336);
        assert_eq!(r.moments, [56, 112, 560]);

        let r = full_report(&mono(4, 6), true).unwrap();
        assert!(!r.is_o_polynomial());
        assert_eq!(r.verdict_geometry, Some(false));

        assert!(matches!(
            full_report(&mono(6, 2), true),
            Err(Error::ResourceCap { .. })
        ));
    }
}
