//! Walsh transform `W_F(u, v) = sum_x (-1)^(tr(v F(x)) + tr(u x))`.
//!
//! The fast path runs a Walsh-Hadamard butterfly over the sign table of the
//! component `tr(v F(x))`. The butterfly uses the characters
//! `(-1)^popcount(m & x)`, so its output is reindexed through the trace form
//! `u -> m(u)` with `tr(u x) = popcount(m(u) & x) mod 2`.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::field::{Elem, Field};
use crate::func::VecFunc;

/// Largest `n` for which [`full_spectrum`] materializes all `2^(2n)` entries.
pub const MATERIALIZE_MAX_N: u32 = 10;

/// In-place unnormalized Walsh-Hadamard transform.
pub fn fwht_in_place(vec: &mut [i64]) -> Result<()> {
    let len = vec.len();
    if !len.is_power_of_two() {
        return Err(Error::NotPowerOfTwo(len));
    }
    let mut half = 1;
    while half < len {
        for block in vec.chunks_exact_mut(2 * half) {
            let (lo, hi) = block.split_at_mut(half);
            for (a, b) in lo.iter_mut().zip(hi.iter_mut()) {
                let (x, y) = (*a, *b);
                *a = x + y;
                *b = x - y;
            }
        }
        half *= 2;
    }
    Ok(())
}

/// `out[m] = sum_x vec[x] * (-1)^popcount(m & x)`.
pub fn fwht(mut vec: Vec<i64>) -> Result<Vec<i64>> {
    fwht_in_place(&mut vec)?;
    Ok(vec)
}

/// Table of trace-form masks: `masks[u]` satisfies
/// `tr(u y) = popcount(masks[u] & y) mod 2`.
#[derive(Debug, Clone)]
pub struct TraceDual {
    masks: Vec<u32>,
}

impl TraceDual {
    pub fn new(field: &Field) -> TraceDual {
        // linear in u: fill from the images of the basis vectors
        let mut masks = vec![0u32; field.order()];
        for bit in 0..field.n() {
            let base = 1usize << bit;
            let image = field.trace_form(base as Elem);
            for u in 0..base {
                masks[base | u] = masks[u] ^ image;
            }
        }
        TraceDual { masks }
    }

    pub fn mask(&self, u: Elem) -> u32 {
        self.masks[u as usize]
    }
}

/// Walsh rows of one function, sharing the trace-form table.
#[derive(Debug, Clone)]
pub struct WalshRows<'a> {
    func: &'a VecFunc,
    dual: TraceDual,
}

impl<'a> WalshRows<'a> {
    pub fn new(func: &'a VecFunc) -> WalshRows<'a> {
        WalshRows {
            dual: TraceDual::new(func.field()),
            func,
        }
    }

    pub fn func(&self) -> &VecFunc {
        self.func
    }

    /// `(-1)^tr(v F(x))` for every `x`.
    pub fn sign_table(&self, v: Elem) -> Vec<i64> {
        let mask = self.dual.mask(v);
        self.func
            .table()
            .iter()
            .map(|&y| {
                if (y & mask).count_ones() & 1 == 0 {
                    1
                } else {
                    -1
                }
            })
            .collect()
    }

    /// `[W_F(u, v) for u in GF(2^n)]`.
    pub fn row(&self, v: Elem) -> Vec<i64> {
        let mut hat = self.sign_table(v);
        fwht_in_place(&mut hat).expect("field order is a power of two");
        (0..hat.len() as Elem)
            .map(|u| hat[self.dual.mask(u) as usize])
            .collect()
    }
}

/// Sign table of the component `x -> tr(v F(x))`.
pub fn component_sign_table(func: &VecFunc, v: Elem) -> Vec<i64> {
    let field = func.field();
    func.table()
        .iter()
        .map(|&y| {
            if field.trace(field.mul(v, y)) == 0 {
                1
            } else {
                -1
            }
        })
        .collect()
}

/// Definitional O(2^n) evaluation of `W_F(u, v)`.
pub fn walsh_at(func: &VecFunc, u: Elem, v: Elem) -> i64 {
    let field = func.field();
    field
        .elements()
        .map(|x| {
            let bit = field.trace(field.mul(v, func.eval(x))) ^ field.trace(field.mul(u, x));
            1 - 2 * bit as i64
        })
        .sum()
}

/// Fast row `[W_F(u, v) for all u]`.
pub fn walsh_row(func: &VecFunc, v: Elem) -> Vec<i64> {
    WalshRows::new(func).row(v)
}

/// Materialized `W_F(u, v)` for all pairs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WalshSpectrum {
    field: Field,
    /// Row-major by component: `entries[v * 2^n + u]`.
    entries: Vec<i64>,
}

impl WalshSpectrum {
    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn get(&self, u: Elem, v: Elem) -> i64 {
        self.entries[(v as usize) * self.field.order() + u as usize]
    }

    /// All `W_F(., v)`.
    pub fn component(&self, v: Elem) -> &[i64] {
        let q = self.field.order();
        &self.entries[v as usize * q..(v as usize + 1) * q]
    }
}

pub fn full_spectrum(func: &VecFunc) -> Result<WalshSpectrum> {
    let n = func.n();
    if n > MATERIALIZE_MAX_N {
        return Err(Error::ResourceCap {
            what: "full spectrum materialization",
            n,
            max: MATERIALIZE_MAX_N,
            hint: "stream individual rows with walsh_row instead",
        });
    }
    let rows = WalshRows::new(func);
    let q = func.field().order();
    let mut entries = vec![0i64; q * q];
    entries
        .par_chunks_mut(q)
        .enumerate()
        .for_each(|(v, out)| out.copy_from_slice(&rows.row(v as Elem)));
    Ok(WalshSpectrum {
        field: *func.field(),
        entries,
    })
}
