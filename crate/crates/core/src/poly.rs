//! Dense univariate polynomials over `ℤ` with arbitrary-precision
//! coefficients.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

/// Coefficient `i` multiplies `x^i`; trailing zeros are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Poly {
    coeffs: Vec<BigInt>,
}

impl Poly {
    pub fn zero() -> Poly {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Poly {
        Poly::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Poly {
        Poly::from_coeffs(vec![c])
    }

    pub fn monomial(c: BigInt, exp: usize) -> Poly {
        let mut v = vec![BigInt::zero(); exp + 1];
        v[exp] = c;
        Poly::from_coeffs(v)
    }

    /// The variable itself.
    pub fn x() -> Poly {
        Poly::monomial(BigInt::one(), 1)
    }

    /// `1 - x`.
    pub fn one_minus_x() -> Poly {
        Poly::from_coeffs(vec![BigInt::one(), -BigInt::one()])
    }

    pub fn from_coeffs(mut coeffs: Vec<BigInt>) -> Poly {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Poly {
        Poly::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn scale(&self, c: &BigInt) -> Poly {
        Poly::from_coeffs(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn shift(&self, k: usize) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut v = vec![BigInt::zero(); k];
        v.extend(self.coeffs.iter().cloned());
        Poly::from_coeffs(v)
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_rational(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + BigRational::from_integer(c.clone());
        }
        acc
    }

    /// Exponents carrying a nonzero coefficient, ascending.
    pub fn support(&self) -> Vec<usize> {
        (0..self.coeffs.len()).filter(|&i| !self.coeffs[i].is_zero()).collect()
    }

    /// Remainder of division by a monic polynomial.
    pub fn rem_monic(&self, m: &Poly) -> Poly {
        let dm = m.degree().expect("modulus must be nonzero");
        assert!(m.coeffs[dm].is_one(), "modulus must be monic");
        let mut r = self.coeffs.clone();
        while r.len() > dm {
            let top = r.len() - 1;
            let c = r[top].clone();
            if !c.is_zero() {
                for (i, mc) in m.coeffs.iter().enumerate() {
                    r[top - dm + i] -= &c * mc;
                }
            }
            r.pop();
        }
        Poly::from_coeffs(r)
    }

    /// Exact quotient by a monic polynomial; panics if the division is not exact.
    pub fn div_exact_monic(&self, m: &Poly) -> Poly {
        let dm = m.degree().expect("modulus must be nonzero");
        let mut r = self.coeffs.clone();
        if r.len() <= dm {
            assert!(self.is_zero(), "inexact division");
            return Poly::zero();
        }
        let mut q = vec![BigInt::zero(); r.len() - dm];
        while r.len() > dm {
            let top = r.len() - 1;
            let c = r[top].clone();
            q[top - dm] = c.clone();
            if !c.is_zero() {
                for (i, mc) in m.coeffs.iter().enumerate() {
                    r[top - dm + i] -= &c * mc;
                }
            }
            r.pop();
        }
        assert!(r.iter().all(|c| c.is_zero()), "inexact division");
        Poly::from_coeffs(q)
    }

    /// Renders as `Q^2 + Q^4` style text in the given variable.
    pub fn render(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono = match i {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{i}"),
            };
            if mono.is_empty() {
                out.push_str(&a.to_string());
            } else if a.is_one() {
                out.push_str(&mono);
            } else {
                out.push_str(&format!("{a}{mono}"));
            }
        }
        out
    }
}

/// The `n`-th cyclotomic polynomial `Φ_n`.
pub fn cyclotomic(n: usize) -> Poly {
    assert!(n >= 1);
    let mut p = Poly::monomial(BigInt::one(), n) - Poly::one();
    for k in 1..n {
        if n.is_multiple_of(k) {
            p = p.div_exact_monic(&cyclotomic(k));
        }
    }
    p
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render("x"))
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::from_coeffs((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::from_coeffs((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut v = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                v[i + j] += a * b;
            }
        }
        Poly::from_coeffs(v)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::from_coeffs(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Add for Poly {
    type Output = Poly;
    fn add(self, rhs: Poly) -> Poly {
        &self + &rhs
    }
}

impl Sub for Poly {
    type Output = Poly;
    fn sub(self, rhs: Poly) -> Poly {
        &self - &rhs
    }
}

impl Mul for Poly {
    type Output = Poly;
    fn mul(self, rhs: Poly) -> Poly {
        &self * &rhs
    }
}
