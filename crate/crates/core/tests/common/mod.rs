//! Brute-force oracles. Everything here goes through `walsh_at` and
//! `count_solutions`, never through the butterfly or the trace-form tables.

#![allow(dead_code)]

use opoly::checker::count_solutions;
use opoly::spectrum::walsh_at;
use opoly::{Elem, Field, VecFunc};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn field(n: u32) -> Field {
    Field::with_default_modulus(n).unwrap()
}

pub fn random_func(field: Field, rng: &mut ChaCha8Rng) -> VecFunc {
    let table = (0..field.order())
        .map(|_| rng.gen_range(0..1 << field.n()))
        .collect();
    VecFunc::from_table(field, table).unwrap()
}

pub fn mono(n: u32, d: u64) -> VecFunc {
    VecFunc::from_monomial(field(n), d).unwrap()
}

/// `w[u][v] = W_F(u, v)` by definition.
pub fn naive_spectrum(func: &VecFunc) -> Vec<Vec<i64>> {
    let f = func.field();
    f.elements()
        .map(|u| f.elements().map(|v| walsh_at(func, u, v)).collect())
        .collect()
}

/// `sum_{b != 0} sum_{v1, v2} W(b v1, v1) W(b v2, v2) W(b (v1 + v2), v1 + v2)`.
pub fn naive_triple_sum(func: &VecFunc) -> i128 {
    let f = func.field();
    let w = naive_spectrum(func);
    let at = |b: Elem, v: Elem| w[f.mul(b, v) as usize][v as usize] as i128;
    let mut total = 0;
    for b in 1..f.order() as Elem {
        for v1 in f.elements() {
            for v2 in f.elements() {
                total += at(b, v1) * at(b, v2) * at(b, v1 ^ v2);
            }
        }
    }
    total
}

/// `sum_{a, b != 0} N(b, a)^j` by scanning every equation.
pub fn naive_count_moment(func: &VecFunc, j: u32) -> i128 {
    let f = func.field();
    let mut total = 0;
    for b in 1..f.order() as Elem {
        for a in f.elements() {
            total += (count_solutions(func, b, a) as i128).pow(j);
        }
    }
    total
}

/// `sum_v W(b v, v)^2` by definition.
pub fn naive_square_sum(func: &VecFunc, b: Elem) -> i128 {
    let f = func.field();
    f.elements()
        .map(|v| (walsh_at(func, f.mul(b, v), v) as i128).pow(2))
        .sum()
}
