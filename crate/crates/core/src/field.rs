//! Arithmetic in GF(2^n), 1 <= n <= 16, polynomial basis.
//!
//! An element is the bitmask of its coefficients: bit `i` holds the
//! coefficient of `x^i`. Addition is XOR.

use crate::error::{Error, Result};

/// Field element encoded as a coefficient bitmask below `2^n`.
pub type Elem = u32;

pub const MIN_DEGREE: u32 = 1;
pub const MAX_DEGREE: u32 = 16;

/// Lexicographically smallest irreducible polynomial of each degree 1..=16.
const DEFAULT_MODULI: [u32; 16] = [
    0x2, 0x7, 0xb, 0x13, 0x25, 0x43, 0x83, 0x11b, 0x203, 0x409, 0x805, 0x1009, 0x201b, 0x4021,
    0x8003, 0x1002b,
];

fn check_degree(n: u32) -> Result<()> {
    if (MIN_DEGREE..=MAX_DEGREE).contains(&n) {
        Ok(())
    } else {
        Err(Error::DegreeOutOfRange(n))
    }
}

fn degree(poly: u32) -> u32 {
    31 - poly.leading_zeros()
}

/// Remainder of carry-less division over GF(2).
fn poly_rem(mut a: u32, b: u32) -> u32 {
    let db = degree(b);
    while a != 0 && degree(a) >= db {
        a ^= b << (degree(a) - db);
    }
    a
}

/// Irreducibility over GF(2) by trial division with every polynomial of
/// degree 1..=deg/2.
pub fn is_irreducible(poly: u32) -> Result<bool> {
    if poly < 2 {
        return Err(Error::ConstantPolynomial(poly));
    }
    let half = degree(poly) / 2;
    Ok((2u32..1 << (half + 1)).all(|d| poly_rem(poly, d) != 0))
}

/// Smallest irreducible degree-`n` polynomial, from the embedded table.
pub fn find_default_modulus(n: u32) -> Result<u32> {
    check_degree(n)?;
    Ok(DEFAULT_MODULI[(n - 1) as usize])
}

/// Same as [`find_default_modulus`] but by exhaustive scan; the embedded
/// table is checked against this.
pub fn scan_default_modulus(n: u32) -> Result<u32> {
    check_degree(n)?;
    for m in (1u32 << n)..(1u32 << (n + 1)) {
        if is_irreducible(m)? {
            return Ok(m);
        }
    }
    unreachable!("an irreducible polynomial exists in every degree")
}

/// GF(2^n) given by its reduction polynomial.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Field {
    n: u32,
    modulus: u32,
    /// Bit `i` is `tr(x^i)`, so `tr(a) = parity(a & trace_mask)`.
    trace_mask: u32,
}

impl Field {
    pub fn new(n: u32, modulus: u32) -> Result<Field> {
        check_degree(n)?;
        if degree(modulus.max(1)) != n {
            return Err(Error::ModulusDegree { modulus, n });
        }
        if !is_irreducible(modulus)? {
            return Err(Error::ReducibleModulus(modulus));
        }
        let mut field = Field {
            n,
            modulus,
            trace_mask: 0,
        };
        field.trace_mask = (0..n)
            .filter(|&i| field.trace_by_frobenius(1 << i) == 1)
            .fold(0, |m, i| m | 1 << i);
        Ok(field)
    }

    pub fn with_default_modulus(n: u32) -> Result<Field> {
        Field::new(n, find_default_modulus(n)?)
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    /// Number of elements, `2^n`.
    pub fn order(&self) -> usize {
        1 << self.n
    }

    /// `2^n - 1`, the order of the multiplicative group.
    pub fn group_order(&self) -> u64 {
        (1u64 << self.n) - 1
    }

    pub fn elements(&self) -> std::ops::Range<Elem> {
        0..(1 << self.n)
    }

    pub fn contains(&self, a: Elem) -> bool {
        a >> self.n == 0
    }

    /// Shift-and-XOR product, reducing after every shift.
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        debug_assert!(self.contains(a) && self.contains(b));
        let top = 1 << self.n;
        let (mut a, mut b, mut acc) = (a, b, 0);
        while b != 0 {
            if b & 1 != 0 {
                acc ^= a;
            }
            b >>= 1;
            a <<= 1;
            if a & top != 0 {
                a ^= self.modulus;
            }
        }
        acc
    }

    pub fn square(&self, a: Elem) -> Elem {
        self.mul(a, a)
    }

    /// Square-and-multiply; `pow(0, 0) = 1`.
    pub fn pow(&self, a: Elem, mut e: u64) -> Elem {
        let mut base = a;
        let mut acc = 1;
        while e != 0 {
            if e & 1 != 0 {
                acc = self.mul(acc, base);
            }
            base = self.square(base);
            e >>= 1;
        }
        acc
    }

    /// `a^(2^n - 2)`.
    pub fn inv(&self, a: Elem) -> Result<Elem> {
        if a == 0 {
            return Err(Error::ZeroInverse);
        }
        Ok(self.pow(a, self.group_order() - 1))
    }

    /// Inverse table with the convention `table[0] = 0`.
    pub fn inverse_table(&self) -> Vec<Elem> {
        let mut table = vec![0; self.order()];
        for a in 1..self.order() as Elem {
            if table[a as usize] == 0 {
                let b = self.pow(a, self.group_order() - 1);
                table[a as usize] = b;
                table[b as usize] = a;
            }
        }
        table
    }

    /// Absolute trace.
    pub fn trace(&self, a: Elem) -> u8 {
        ((a & self.trace_mask).count_ones() & 1) as u8
    }

    /// Absolute trace as the sum `a + a^2 + ... + a^(2^(n-1))`.
    pub fn trace_by_frobenius(&self, a: Elem) -> u8 {
        let mut sum = 0;
        let mut conj = a;
        for _ in 0..self.n {
            sum ^= conj;
            conj = self.square(conj);
        }
        debug_assert!(sum <= 1, "trace left the prime field");
        sum as u8
    }

    /// Bitmask `m` with `tr(a * y) = parity(m & y)` for every `y`.
    pub fn trace_form(&self, a: Elem) -> u32 {
        (0..self.n)
            .filter(|&i| self.trace(self.mul(a, 1 << i)) == 1)
            .fold(0, |m, i| m | 1 << i)
    }
}
