//! Vectorial functions GF(2^n) -> GF(2^n) stored as full value tables.

use crate::error::{Error, Result};
use crate::field::{Elem, Field};

/// A sparse univariate polynomial: `(exponent, coefficient)` pairs with
/// distinct exponents in `0..=2^n-1` and nonzero coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyTerms {
    terms: Vec<(u64, Elem)>,
}

impl PolyTerms {
    pub fn new(terms: Vec<(u64, Elem)>) -> Result<PolyTerms> {
        let mut seen = std::collections::BTreeSet::new();
        for &(exp, coef) in &terms {
            if !seen.insert(exp) {
                return Err(Error::DuplicateExponent(exp));
            }
            if coef == 0 {
                return Err(Error::ZeroCoefficient(exp));
            }
        }
        Ok(PolyTerms { terms })
    }

    pub fn monomial(exp: u64) -> PolyTerms {
        PolyTerms {
            terms: vec![(exp, 1)],
        }
    }

    pub fn terms(&self) -> &[(u64, Elem)] {
        &self.terms
    }
}

/// Reduces an exponent into `1..=2^n-1`, preserving `x^e` on every
/// nonzero `x` and mapping 0 to 0. Only call this deliberately: `x^0` and
/// `x^(2^n-1)` differ at zero.
pub fn reduce_exponent(field: &Field, exp: u64) -> u64 {
    let q = field.group_order();
    match exp % q {
        0 => q,
        r => r,
    }
}

/// `F: GF(2^n) -> GF(2^n)` with `table[x] = F(x)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VecFunc {
    field: Field,
    table: Vec<Elem>,
}

impl VecFunc {
    pub fn from_table(field: Field, values: Vec<Elem>) -> Result<VecFunc> {
        if values.len() != field.order() {
            return Err(Error::TableLength {
                got: values.len(),
                expected: field.order(),
            });
        }
        if let Some((index, &value)) = values.iter().enumerate().find(|(_, &v)| !field.contains(v))
        {
            return Err(Error::EntryOutOfRange {
                index,
                value,
                n: field.n(),
            });
        }
        Ok(VecFunc {
            field,
            table: values,
        })
    }

    /// `x -> x^d`, with `0^0 = 1`.
    pub fn from_monomial(field: Field, d: u64) -> Result<VecFunc> {
        check_exponent(&field, d)?;
        let table = field.elements().map(|x| field.pow(x, d)).collect();
        Ok(VecFunc { field, table })
    }

    pub fn from_polynomial(field: Field, poly: &PolyTerms) -> Result<VecFunc> {
        for &(exp, coef) in poly.terms() {
            check_exponent(&field, exp)?;
            if !field.contains(coef) {
                return Err(Error::EntryOutOfRange {
                    index: exp as usize,
                    value: coef,
                    n: field.n(),
                });
            }
        }
        let table = field
            .elements()
            .map(|x| {
                poly.terms().iter().fold(0, |acc, &(exp, coef)| {
                    acc ^ field.mul(coef, field.pow(x, exp))
                })
            })
            .collect();
        Ok(VecFunc { field, table })
    }

    pub fn identity(field: Field) -> VecFunc {
        VecFunc {
            table: field.elements().collect(),
            field,
        }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn n(&self) -> u32 {
        self.field.n()
    }

    pub fn table(&self) -> &[Elem] {
        &self.table
    }

    pub fn eval(&self, x: Elem) -> Elem {
        self.table[x as usize]
    }

    /// Bijectivity via an occupancy bitmap.
    pub fn is_permutation(&self) -> bool {
        is_permutation_table(&self.table)
    }

    /// `G_s(t) = (F(t+s) + F(s)) / t` for `t != 0`, and `G_s(0) = 0`.
    pub fn slope_function(&self, s: Elem) -> VecFunc {
        let inverses = self.field.inverse_table();
        VecFunc {
            field: self.field,
            table: self.slope_table(s, &inverses),
        }
    }

    /// Slope table using a precomputed inverse table (`inverses[0]` unused).
    pub(crate) fn slope_table(&self, s: Elem, inverses: &[Elem]) -> Vec<Elem> {
        let fs = self.eval(s);
        let mut out = vec![0; self.table.len()];
        for t in 1..self.table.len() {
            let diff = self.table[t ^ s as usize] ^ fs;
            out[t] = self.field.mul(diff, inverses[t]);
        }
        out
    }
}

fn check_exponent(field: &Field, exp: u64) -> Result<()> {
    if exp > field.group_order() {
        return Err(Error::ExponentOutOfRange {
            exp,
            max: field.group_order(),
        });
    }
    Ok(())
}

pub(crate) fn is_permutation_table(table: &[Elem]) -> bool {
    let mut seen = vec![0u64; table.len().div_ceil(64)];
    for &y in table {
        let (word, bit) = (y as usize / 64, y % 64);
        match seen.get_mut(word) {
            Some(w) if *w >> bit & 1 == 0 => *w |= 1 << bit,
            _ => return false,
        }
    }
    true
}
