//! Classical o-polynomial families. The exponent recipes are checked
//! against the characterizations in the test suite rather than trusted.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::field::{Field, MAX_DEGREE};
use crate::func::{reduce_exponent, PolyTerms, VecFunc};

/// A named hyperoval family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    /// `x^(2^k)`, `gcd(k, n) = 1`
    Translation(u32),
    /// `x^6`, `n` odd
    Segre,
    /// `x^(3s + 4)`, `s = 2^((n+1)/2)`, `n` odd
    Glynn1,
    /// `x^(s + 2^((n+1)/4))`, `s = 2^((n+1)/2)`, `n = 3 mod 4`
    Glynn2,
    /// `x^(1/6) + x^(3/6) + x^(5/6)`, `n` odd
    Payne,
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn mod_inverse(a: u64, m: u64) -> Option<u64> {
    let (mut r0, mut r1) = (m as i128, (a % m) as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let quot = r0 / r1;
        (r0, r1) = (r1, r0 - quot * r1);
        (t0, t1) = (t1, t0 - quot * t1);
    }
    (r0 == 1).then(|| t0.rem_euclid(m as i128) as u64)
}

impl Family {
    pub fn name(&self) -> &'static str {
        match self {
            Family::Translation(_) => "translation",
            Family::Segre => "segre",
            Family::Glynn1 => "glynn1",
            Family::Glynn2 => "glynn2",
            Family::Payne => "payne",
        }
    }

    pub fn param(&self) -> Option<u32> {
        match *self {
            Family::Translation(k) => Some(k),
            _ => None,
        }
    }

    pub fn is_valid(&self, n: u32) -> bool {
        let odd = n % 2 == 1 && n >= 3;
        match *self {
            Family::Translation(k) => k >= 1 && k < n && gcd(k as u64, n as u64) == 1,
            Family::Segre | Family::Glynn1 | Family::Payne => odd,
            Family::Glynn2 => odd && n % 4 == 3,
        }
    }

    /// The family's polynomial over `field`, exponents reduced into
    /// `1..=2^n-1`.
    pub fn terms(&self, field: &Field) -> Result<PolyTerms> {
        let n = field.n();
        if !self.is_valid(n) {
            return Err(Error::InvalidFamilyDegree {
                family: self.to_string(),
                n,
            });
        }
        let q = field.group_order();
        let sigma = 1u64 << n.div_ceil(2);
        let exps: Vec<u64> = match *self {
            Family::Translation(k) => vec![1 << k],
            Family::Segre => vec![6],
            Family::Glynn1 => vec![3 * sigma + 4],
            Family::Glynn2 => vec![sigma + (1 << ((n + 1) / 4))],
            Family::Payne => {
                let sixth =
                    mod_inverse(6, q).ok_or(Error::NonInvertibleExponent { den: 6, modulus: q })?;
                vec![sixth, 3 * sixth, 5 * sixth]
            }
        };
        PolyTerms::new(
            exps.into_iter()
                .map(|e| (reduce_exponent(field, e), 1))
                .collect(),
        )
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.param() {
            Some(k) => write!(f, "{}({k})", self.name()),
            None => f.write_str(self.name()),
        }
    }
}

impl FromStr for Family {
    type Err = Error;

    /// Accepts `segre`, `glynn1`, `glynn2`, `payne`, and `translation(k)` or
    /// `translation:k`.
    fn from_str(s: &str) -> Result<Family> {
        let s = s.trim().to_ascii_lowercase();
        let unknown = || Error::UnknownFamily(s.clone());
        if let Some(rest) = s.strip_prefix("translation") {
            let k = rest
                .strip_prefix(':')
                .or_else(|| rest.strip_prefix('(').and_then(|r| r.strip_suffix(')')))
                .ok_or_else(unknown)?;
            return k.parse().map(Family::Translation).map_err(|_| unknown());
        }
        match s.as_str() {
            "segre" => Ok(Family::Segre),
            "glynn1" => Ok(Family::Glynn1),
            "glynn2" => Ok(Family::Glynn2),
            "payne" => Ok(Family::Payne),
            _ => Err(unknown()),
        }
    }
}

/// The family's function over the default field of degree `n`.
pub fn family(fam: Family, n: u32) -> Result<VecFunc> {
    let field = Field::with_default_modulus(n)?;
    VecFunc::from_polynomial(field, &fam.terms(&field)?)
}

/// Every family instance defined at degree `n`.
pub fn list_families(n: u32) -> Vec<Family> {
    let mut out: Vec<Family> = (1..n.min(MAX_DEGREE)).map(Family::Translation).collect();
    out.extend([Family::Segre, Family::Glynn1, Family::Glynn2, Family::Payne]);
    out.retain(|f| f.is_valid(n));
    out
}
