//! Structure constants of the Virasoro algebra.
//!
//! Brackets follow `[d_m, d_n] = (n - m) d_{m+n} + δ_{m,-n} (m³ - m)/12 · z`
//! with `z` central.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::scalar::Scalar;

/// A finite combination of the generators `d_k` and the central element `z`.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct VirasoroElement {
    terms: BTreeMap<i64, Scalar>,
    central: Scalar,
}

impl VirasoroElement {
    pub fn zero() -> Self {
        Self::default()
    }

    /// `d_k`.
    pub fn d(k: i64) -> Self {
        Self::zero().with_term(k, Scalar::ONE)
    }

    /// The central element `z`.
    pub fn z() -> Self {
        VirasoroElement {
            terms: BTreeMap::new(),
            central: Scalar::ONE,
        }
    }

    pub fn from_parts<I: IntoIterator<Item = (i64, Scalar)>>(terms: I, central: Scalar) -> Self {
        let mut out = VirasoroElement {
            terms: BTreeMap::new(),
            central,
        };
        for (k, c) in terms {
            out.add_term(k, &c);
        }
        out
    }

    pub fn with_term(mut self, k: i64, c: Scalar) -> Self {
        self.add_term(k, &c);
        self
    }

    pub fn add_term(&mut self, k: i64, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(k).or_insert(Scalar::ZERO);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&k);
        }
    }

    pub fn coeff(&self, k: i64) -> Scalar {
        self.terms.get(&k).cloned().unwrap_or(Scalar::ZERO)
    }

    pub fn central(&self) -> &Scalar {
        &self.central
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &Scalar)> {
        self.terms.iter().map(|(k, c)| (*k, c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty() && self.central.is_zero()
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        Self::from_parts(self.terms.iter().map(|(k, v)| (*k, v * c)), &self.central * c)
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(*k, c);
        }
        out.central = &out.central + &other.central;
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-Scalar::ONE))
    }
}

impl fmt::Debug for VirasoroElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in &self.terms {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            write!(f, "{}*d({})", c, k)?;
        }
        if !self.central.is_zero() {
            if !first {
                f.write_str(" + ")?;
            }
            write!(f, "{}*z", self.central)?;
        }
        Ok(())
    }
}

/// `[d_m, d_n]`.
pub fn bracket(m: i64, n: i64) -> VirasoroElement {
    let mut out = VirasoroElement::zero().with_term(m + n, Scalar::from_int(n - m));
    if m + n == 0 {
        out.central = Scalar::ratio(m * m * m - m, 12);
    }
    out
}

/// Bilinear extension of [`bracket`]; the central parts of `x` and `y` drop out.
pub fn bracket_elements(x: &VirasoroElement, y: &VirasoroElement) -> VirasoroElement {
    let mut out = VirasoroElement::zero();
    for (m, a) in &x.terms {
        for (n, b) in &y.terms {
            let ab = a * b;
            out = out.add(&bracket(*m, *n).scale(&ab));
        }
    }
    out
}

/// The subalgebras spanned by `d_i` over an index range.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SubalgebraSpec {
    /// `span{d_i | i >= -1}`.
    Witt,
    /// `span{d_i | i >= 0}`.
    Borel,
    /// `span{d_i | i >= r}`.
    Tail(u32),
    /// The quotient of the Borel part by the tail above `r`. Elements are
    /// presented by lifts to the Borel part; indices above `r` are null.
    Quotient(u32),
}

impl SubalgebraSpec {
    pub fn lowest_index(&self) -> i64 {
        match self {
            SubalgebraSpec::Witt => -1,
            SubalgebraSpec::Borel | SubalgebraSpec::Quotient(_) => 0,
            SubalgebraSpec::Tail(r) => *r as i64,
        }
    }

    /// Drops the terms that vanish in a quotient presentation.
    pub fn reduce(&self, x: &VirasoroElement) -> VirasoroElement {
        match self {
            SubalgebraSpec::Quotient(r) => VirasoroElement::from_parts(
                x.terms().filter(|(k, _)| *k <= *r as i64).map(|(k, c)| (k, c.clone())),
                x.central.clone(),
            ),
            _ => x.clone(),
        }
    }
}

/// Membership in one of the index-range subalgebras. `z` belongs to none.
pub fn in_subalgebra(x: &VirasoroElement, s: SubalgebraSpec) -> bool {
    x.central.is_zero() && x.terms.keys().all(|k| *k >= s.lowest_index())
}

/// A formal linear combination of words in the generators. Each word is
/// applied right to left.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OperatorWord {
    summands: Vec<(Scalar, Vec<i64>)>,
}

impl OperatorWord {
    /// Panics if any index list is empty.
    pub fn new(summands: Vec<(Scalar, Vec<i64>)>) -> Self {
        assert!(
            summands.iter().all(|(_, w)| !w.is_empty()),
            "operator word with an empty summand"
        );
        OperatorWord { summands }
    }

    pub fn summands(&self) -> &[(Scalar, Vec<i64>)] {
        &self.summands
    }

    pub fn coefficient_sum(&self) -> Scalar {
        self.summands.iter().fold(Scalar::ZERO, |acc, (c, _)| &acc + c)
    }

    /// `d_m d_n - d_n d_m`.
    pub fn commutator(m: i64, n: i64) -> Self {
        OperatorWord::new(vec![(Scalar::ONE, vec![m, n]), (-Scalar::ONE, vec![n, m])])
    }
}

/// `X_{l,m} = d_{l-m-3} d_{m+3} - 3 d_{l-m-2} d_{m+2} + 3 d_{l-m-1} d_{m+1} - d_{l-m} d_m`.
pub fn x_word(l: i64, m: i64) -> OperatorWord {
    let coeffs = [1, -3, 3, -1];
    OperatorWord::new(
        coeffs
            .iter()
            .enumerate()
            .map(|(j, c)| {
                let j = j as i64;
                (Scalar::from_int(*c), vec![l - m - 3 + j, m + 3 - j])
            })
            .collect(),
    )
}
