//! Values and homomorphisms into Q/Z.
//!
//! Q/Z is never materialized as a group object; everything valued in it is
//! either a single reduced rational in `[0, 1)` or a finite tuple of them
//! indexed by torsion generators.

use crate::error::{Error, Result};
use crate::group::{FgGroup, GroupElement};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::fmt;
use std::str::FromStr;

/// An element of Q/Z: `numerator / denominator` with
/// `0 <= numerator < denominator` and `gcd(numerator, denominator) = 1`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QZValue {
    numerator: BigInt,
    denominator: BigInt,
}

impl QZValue {
    pub fn new(numerator: BigInt, denominator: BigInt) -> Result<Self> {
        if denominator.is_zero() {
            return Err(Error::Input("denominator must be nonzero".into()));
        }
        let (mut n, mut d) = if denominator.is_negative() {
            (-numerator, -denominator)
        } else {
            (numerator, denominator)
        };
        n = n.mod_floor(&d);
        let g = n.gcd(&d);
        if !g.is_one() {
            n /= &g;
            d /= &g;
        }
        Ok(Self {
            numerator: n,
            denominator: d,
        })
    }

    pub fn from_i64(numerator: i64, denominator: i64) -> Self {
        Self::new(BigInt::from(numerator), BigInt::from(denominator)).expect("nonzero denominator")
    }

    pub fn zero() -> Self {
        Self {
            numerator: BigInt::zero(),
            denominator: BigInt::one(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.numerator.is_zero()
    }

    pub fn numerator(&self) -> &BigInt {
        &self.numerator
    }

    pub fn denominator(&self) -> &BigInt {
        &self.denominator
    }

    /// Additive order in Q/Z (the reduced denominator).
    pub fn order(&self) -> BigInt {
        self.denominator.clone()
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::new(
            &self.numerator * &other.denominator + &other.numerator * &self.denominator,
            &self.denominator * &other.denominator,
        )
        .expect("denominators stay nonzero")
    }

    pub fn neg(&self) -> Self {
        Self::new(-self.numerator.clone(), self.denominator.clone()).expect("nonzero")
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        Self::new(&self.numerator * k, self.denominator.clone()).expect("nonzero")
    }

    pub fn to_f64(&self) -> f64 {
        let n: f64 = self.numerator.to_string().parse().unwrap_or(f64::NAN);
        let d: f64 = self.denominator.to_string().parse().unwrap_or(f64::NAN);
        n / d
    }
}

impl fmt::Display for QZValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.numerator, self.denominator)
    }
}

impl fmt::Debug for QZValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{self}]")
    }
}

impl FromStr for QZValue {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (n, d) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s, "1"),
        };
        let n = BigInt::from_str(n).map_err(|_| Error::Input(format!("bad numerator {n:?}")))?;
        let d = BigInt::from_str(d).map_err(|_| Error::Input(format!("bad denominator {d:?}")))?;
        Self::new(n, d)
    }
}

/// A homomorphism from a finite group into Q/Z, stored by its values on the
/// torsion generators.
#[derive(Clone, PartialEq, Eq)]
pub struct QZHom {
    source: FgGroup,
    values: Vec<QZValue>,
}

impl QZHom {
    pub fn new(source: FgGroup, values: Vec<QZValue>) -> Result<Self> {
        if !source.is_finite() {
            return Err(Error::InfiniteGroup(format!(
                "a hom into Q/Z is stored only on finite groups, got {source}"
            )));
        }
        if values.len() != source.len() {
            return Err(Error::Shape(format!(
                "expected {} values for {source}, got {}",
                source.len(),
                values.len()
            )));
        }
        for (i, v) in values.iter().enumerate() {
            let d = source
                .generator_order(i)
                .expect("finite group has only torsion generators");
            if !(d % v.order()).is_zero() {
                return Err(Error::IllDefinedHom(format!(
                    "generator {i} has order {d} but is sent to {v}, whose order {} does not divide it",
                    v.order()
                )));
            }
        }
        Ok(Self { source, values })
    }

    pub fn zero(source: FgGroup) -> Result<Self> {
        let n = source.len();
        Self::new(source, vec![QZValue::zero(); n])
    }

    pub fn source(&self) -> &FgGroup {
        &self.source
    }

    pub fn values(&self) -> &[QZValue] {
        &self.values
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(QZValue::is_zero)
    }

    pub fn evaluate(&self, x: &GroupElement) -> Result<QZValue> {
        if x.group() != &self.source {
            return Err(Error::NotInGroup(format!(
                "element of {} evaluated against a character of {}",
                x.group(),
                self.source
            )));
        }
        let mut acc = QZValue::zero();
        for (c, v) in x.coords().iter().zip(&self.values) {
            acc = acc.add(&v.scale(c));
        }
        Ok(acc)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.source != other.source {
            return Err(Error::Shape("character addition across groups".into()));
        }
        Self::new(
            self.source.clone(),
            self.values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a.add(b))
                .collect(),
        )
    }
}

impl fmt::Debug for QZHom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} -> Q/Z: ", self.source)?;
        for (i, v) in self.values.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "g{i} -> {v}")?;
        }
        Ok(())
    }
}
