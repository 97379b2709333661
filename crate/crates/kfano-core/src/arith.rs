// SPDX-License-Identifier: MIT OR Apache-2.0

//! Exact scalars, weights, covectors and affine forms.
//!
//! Weights live in a fixed basis of the weight lattice, covectors in the
//! dual basis, so the pairing is the plain dot product.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Deref, DerefMut};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Arbitrary precision rational, always in lowest terms with a positive
/// denominator.
pub type Rat = num_rational::BigRational;

/// `n / d` as a [`Rat`]. Panics when `d == 0`.
pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn zero() -> Rat {
    Rat::zero()
}

pub fn one() -> Rat {
    Rat::one()
}

/// Parses `"p"`, `"-p"` or `"p/q"` (surrounding whitespace allowed).
pub fn parse_rat(s: &str) -> Option<Rat> {
    let s = s.trim();
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().ok()?;
    let d: BigInt = d.parse().ok()?;
    if d.is_zero() {
        return None;
    }
    Some(Rat::new(n, d))
}

/// Largest integer `<= q`.
pub fn floor(q: &Rat) -> BigInt {
    q.floor().to_integer()
}

/// Smallest integer `>= q`.
pub fn ceil(q: &Rat) -> BigInt {
    q.ceil().to_integer()
}

/// Lossy conversion used only for human-facing decimal annotations.
pub fn to_f64(q: &Rat) -> f64 {
    num_traits::ToPrimitive::to_f64(q).unwrap_or(f64::NAN)
}

pub fn gcd_vec(v: &[BigInt]) -> BigInt {
    v.iter().fold(BigInt::zero(), |g, x| g.gcd(x))
}

/// Scales a rational vector by a positive factor so that it becomes a
/// primitive integer vector. The zero vector maps to itself.
pub fn primitive(v: &[Rat]) -> Vec<BigInt> {
    let l = v
        .iter()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| (x * Rat::from_integer(l.clone())).to_integer()).collect();
    let g = gcd_vec(&ints);
    if g.is_zero() {
        return ints;
    }
    ints.into_iter().map(|x| x / &g).collect()
}

pub fn primitive_rat(v: &[Rat]) -> Vec<Rat> {
    primitive(v).into_iter().map(Rat::from_integer).collect()
}

pub fn dot(a: &[Rat], b: &[Rat]) -> Rat {
    a.iter().zip(b).fold(Rat::zero(), |acc, (x, y)| acc + x * y)
}

pub fn is_zero_vec(v: &[Rat]) -> bool {
    v.iter().all(|x| x.is_zero())
}

pub fn sub_vec(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn add_vec(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn scale_vec(a: &[Rat], s: &Rat) -> Vec<Rat> {
    a.iter().map(|x| x * s).collect()
}

pub fn ints(v: &[i64]) -> Vec<Rat> {
    v.iter().map(|&x| int(x)).collect()
}

/// Writes `(a, b, c)` using the canonical `p/q` forms.
pub fn fmt_vec(v: &[Rat]) -> String {
    use core::fmt::Write;
    let mut s = String::from("(");
    for (i, x) in v.iter().enumerate() {
        if i > 0 {
            s.push_str(", ");
        }
        let _ = write!(s, "{x}");
    }
    s.push(')');
    s
}

pub fn is_integral(q: &Rat) -> bool {
    q.is_integer()
}

pub fn abs(q: &Rat) -> Rat {
    q.abs()
}

macro_rules! coord_vector {
    ($name:ident, $doc:literal) => {
        #[doc = $doc]
        #[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
        pub struct $name(pub Vec<Rat>);

        impl $name {
            pub fn zero(rank: usize) -> Self {
                $name(alloc::vec![Rat::zero(); rank])
            }

            pub fn from_ints(v: &[i64]) -> Self {
                $name(ints(v))
            }

            pub fn dim(&self) -> usize {
                self.0.len()
            }

            pub fn scaled(&self, s: &Rat) -> Self {
                $name(scale_vec(&self.0, s))
            }

            pub fn plus(&self, o: &Self) -> Self {
                $name(add_vec(&self.0, &o.0))
            }

            pub fn minus(&self, o: &Self) -> Self {
                $name(sub_vec(&self.0, &o.0))
            }

            pub fn is_zero(&self) -> bool {
                is_zero_vec(&self.0)
            }
        }

        impl Deref for $name {
            type Target = [Rat];
            fn deref(&self) -> &[Rat] {
                &self.0
            }
        }

        impl DerefMut for $name {
            fn deref_mut(&mut self) -> &mut [Rat] {
                &mut self.0
            }
        }

        impl From<Vec<Rat>> for $name {
            fn from(v: Vec<Rat>) -> Self {
                $name(v)
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(&fmt_vec(&self.0))
            }
        }
    };
}

coord_vector!(Weight, "A point of the rational weight space, in the lattice basis.");
coord_vector!(Covector, "A linear functional on the weight space, in the dual basis.");

/// Exact pairing of a weight with a covector.
pub fn pair(w: &Weight, c: &Covector) -> Result<Rat> {
    if w.len() != c.len() {
        return Err(Error::Dimension { expected: w.len(), found: c.len() });
    }
    Ok(dot(w, c))
}

/// `(constant + <w, linear>) / divisor_of_jump`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AffForm {
    pub linear: Covector,
    pub constant: Rat,
    pub divisor_of_jump: Rat,
}

impl AffForm {
    pub fn new(linear: Covector, constant: Rat, divisor_of_jump: Rat) -> Self {
        assert!(divisor_of_jump.is_positive(), "affine form jump must be positive");
        AffForm { linear, constant, divisor_of_jump }
    }

    /// Same function with jump normalized to 1.
    pub fn normalized(&self) -> AffForm {
        let h = &self.divisor_of_jump;
        AffForm {
            linear: self.linear.scaled(&h.recip()),
            constant: &self.constant / h,
            divisor_of_jump: Rat::one(),
        }
    }

    /// Linear part divided by the jump.
    pub fn slope(&self) -> Vec<Rat> {
        scale_vec(&self.linear, &self.divisor_of_jump.recip())
    }

    /// Constant divided by the jump.
    pub fn intercept(&self) -> Rat {
        &self.constant / &self.divisor_of_jump
    }

    pub fn eval(&self, w: &[Rat]) -> Rat {
        (&self.constant + dot(w, &self.linear)) / &self.divisor_of_jump
    }
}

pub fn eval_aff(f: &AffForm, w: &Weight) -> Result<Rat> {
    if w.len() != f.linear.len() {
        return Err(Error::Dimension { expected: f.linear.len(), found: w.len() });
    }
    Ok(f.eval(w))
}

/// An affine function `constant + <linear, p>` on some ambient `Q^n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Affine {
    pub linear: Vec<Rat>,
    pub constant: Rat,
}

impl Affine {
    pub fn new(linear: Vec<Rat>, constant: Rat) -> Self {
        Affine { linear, constant }
    }

    pub fn constant(dim: usize, c: Rat) -> Self {
        Affine { linear: alloc::vec![Rat::zero(); dim], constant: c }
    }

    /// The `i`-th coordinate function.
    pub fn coord(dim: usize, i: usize) -> Self {
        let mut linear = alloc::vec![Rat::zero(); dim];
        linear[i] = Rat::one();
        Affine { linear, constant: Rat::zero() }
    }

    pub fn dim(&self) -> usize {
        self.linear.len()
    }

    pub fn eval(&self, p: &[Rat]) -> Rat {
        &self.constant + dot(&self.linear, p)
    }

    pub fn add(&self, o: &Affine) -> Affine {
        Affine { linear: add_vec(&self.linear, &o.linear), constant: &self.constant + &o.constant }
    }

    pub fn sub(&self, o: &Affine) -> Affine {
        Affine { linear: sub_vec(&self.linear, &o.linear), constant: &self.constant - &o.constant }
    }

    pub fn scale(&self, s: &Rat) -> Affine {
        Affine { linear: scale_vec(&self.linear, s), constant: &self.constant * s }
    }

    pub fn add_const(&self, c: &Rat) -> Affine {
        Affine { linear: self.linear.clone(), constant: &self.constant + c }
    }

    /// Same function viewed on `Q^n x Q^extra` (new coordinates appended).
    pub fn extend(&self, extra: usize) -> Affine {
        let mut linear = self.linear.clone();
        linear.extend(core::iter::repeat(Rat::zero()).take(extra));
        Affine { linear, constant: self.constant.clone() }
    }

    pub fn is_constant(&self) -> bool {
        is_zero_vec(&self.linear)
    }
}

impl From<&AffForm> for Affine {
    fn from(f: &AffForm) -> Self {
        Affine { linear: f.slope(), constant: f.intercept() }
    }
}
