//! Closed-form actions used as independent oracles for the rewriting engine.
//!
//! `E(λ, b, γ, p)` is realized on `T_i^k = (-1)^k d_{-1}^k w_0 ⊗ t^i`, with
//! `w_0` a highest-weight vector of weight `-γ`; for `γ != 0` it is the loop
//! module `L(Verma(-γ), λ, b, γ + p)`. Only `λ` (standing for `e^h`) is ever
//! represented.

use alloc::collections::BTreeMap;
use core::fmt;

use crate::error::{Error, Result};
use crate::loopmod::{LParams, LoopElement};
use crate::pbw::{PbwMonomial, VacuumSpec};
use crate::scalar::{binomial, Scalar};
use crate::sparse::add_into;

/// Parameters of `E(λ, b, γ, p)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EParams {
    lambda: Scalar,
    pub b: Scalar,
    pub gamma: Scalar,
    pub p: Scalar,
}

impl EParams {
    pub fn new(lambda: Scalar, b: Scalar, gamma: Scalar, p: Scalar) -> Result<Self> {
        if lambda.is_zero() {
            return Err(Error::ZeroLambda);
        }
        Ok(EParams { lambda, b, gamma, p })
    }

    pub fn lambda(&self) -> &Scalar {
        &self.lambda
    }

    /// The highest weight `b' = -γ` of the underlying Verma module.
    pub fn bprime(&self) -> Scalar {
        -&self.gamma
    }

    /// The loop twist `γ + p`.
    pub fn twist(&self) -> Scalar {
        &self.gamma + &self.p
    }

    /// `E(λ^{-1}, b, 1 - γ - p, p)`.
    pub fn dual(&self) -> Self {
        EParams {
            lambda: self.lambda.recip().expect("nonzero λ"),
            b: self.b.clone(),
            gamma: &(&Scalar::ONE - &self.gamma) - &self.p,
            p: self.p.clone(),
        }
    }
}

/// `Σ c_{k,i} T_i^k`, keyed by `(k, i)`.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct TBasisElement {
    terms: BTreeMap<(u32, i64), Scalar>,
}

impl TBasisElement {
    pub fn zero() -> Self {
        Self::default()
    }

    /// `c · T_i^k`.
    pub fn term(k: u32, i: i64, c: Scalar) -> Self {
        let mut out = Self::zero();
        out.add_term(k, i, &c);
        out
    }

    pub fn add_term(&mut self, k: u32, i: i64, c: &Scalar) {
        add_into(&mut self.terms, &(k, i), c);
    }

    pub fn terms(&self) -> &BTreeMap<(u32, i64), Scalar> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The same vector in the PBW basis.
    pub fn to_loop(&self) -> LoopElement {
        let mut out = LoopElement::zero();
        for ((k, i), c) in &self.terms {
            let c = if k % 2 == 1 { -c } else { c.clone() };
            out.add_term(&(*i, PbwMonomial::d_minus_one_power(*k)), &c);
        }
        out
    }

    /// Inverse of [`to_loop`](Self::to_loop); every monomial must be a pure
    /// `d_{-1}` power.
    pub fn from_loop(v: &LoopElement) -> Result<Self> {
        let mut out = Self::zero();
        for ((i, m), c) in v.terms() {
            let k = m.d_minus_one_degree();
            if m.socle_part() != PbwMonomial::vacuum() {
                return Err(Error::Precondition("T-basis vectors are d(-1)^k|vac> (x) t^i"));
            }
            let c = if k % 2 == 1 { -c } else { c.clone() };
            out.add_term(k, *i, &c);
        }
        Ok(out)
    }
}

impl fmt::Debug for TBasisElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for ((k, i), c) in &self.terms {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            write!(f, "{}*T[{}]^{}", c, i, k)?;
        }
        Ok(())
    }
}

/// `d_n · v` on the `T` basis:
/// `λ^n n b' Σ_{j<k} C(k,j) n^{k-j} T^j - λ^n Σ_{j<=k-2} C(k,j) n^{k-j} T^{j+1}
///  + (1 - λ^n) T^{k+1} + (a + nb + i + λ^n n b' - λ^n n k) T^k`, all at `i + n`,
/// where `b' = -γ`, `a = E.b` and `b = γ + p`.
pub fn cm_act(e: &EParams, n: i64, v: &TBasisElement) -> Result<TBasisElement> {
    let lam_n = e.lambda.pow(n).ok_or(Error::ZeroLambda)?;
    let ns = Scalar::from_int(n);
    let bp = e.bprime();
    let twist = e.twist();
    let lam_n_n = &lam_n * &ns;
    let mut out = TBasisElement::zero();
    for ((k, i), c) in &v.terms {
        let (k, i) = (*k, *i);
        let target = i + n;
        let mut npow = alloc::vec::Vec::with_capacity(k as usize + 1);
        let mut acc = Scalar::ONE;
        for _ in 0..=k {
            npow.push(acc.clone());
            acc = &acc * &ns;
        }
        for j in 0..k {
            let cj = &binomial(k, j) * &npow[(k - j) as usize];
            out.add_term(j, target, &(&(&(&lam_n_n * &bp) * &cj) * c));
            if j + 2 <= k {
                out.add_term(j + 1, target, &-(&(&lam_n * &cj) * c));
            }
        }
        out.add_term(k + 1, target, &(&(&Scalar::ONE - &lam_n) * c));
        let diag = &(&(&(&e.b + &(&ns * &twist)) + &Scalar::from_int(i)) + &(&lam_n_n * &bp))
            - &(&lam_n_n * &Scalar::from_int(k as i64));
        out.add_term(k, target, &(&diag * c));
    }
    Ok(out)
}

/// `L(Verma(-γ), λ, b, γ + p)`; undefined for `γ = 0`, where the Verma module
/// of weight zero is not simple and the case analysis of
/// [`classify_e`](crate::structure::classify_e) applies instead.
pub fn e_to_l(e: &EParams) -> Result<LParams> {
    if e.gamma.is_zero() {
        return Err(Error::GammaZero);
    }
    LParams::induced(VacuumSpec::verma(e.bprime()), e.lambda.clone(), e.b.clone(), e.twist())
}

// bivariate polynomial in x = d_{-1}, y = d_0, keyed by (deg x, deg y)
type Bivariate = BTreeMap<(u32, u32), Scalar>;

fn biv_mul(p: &Bivariate, q: &Bivariate) -> Bivariate {
    let mut out = Bivariate::new();
    for ((a, b), c) in p {
        for ((d, e), f) in q {
            add_into(&mut out, &(a + d, b + e), &(c * f));
        }
    }
    out
}

// (shift + var)^e in one variable
fn binomial_power(e: u32, shift: &Scalar, in_x: bool) -> Bivariate {
    let mut out = Bivariate::new();
    let mut spow = Scalar::ONE;
    for j in (0..=e).rev() {
        let key = if in_x { (j, 0) } else { (0, j) };
        add_into(&mut out, &key, &(&binomial(e, j) * &spow));
        spow = &spow * shift;
    }
    out
}

/// Direct formula for the loop module over the charge module `W_μ`, `r = 1`:
/// `d_m (x^i y^j ⊗ t^k) = λ^m (x - m)^i (x y^j + m y^{j+1} + (m²/2) μ_1 (y - 1)^j
///  + (m³/6) μ_2 (y - 2)^j) ⊗ t^{k+m} + (-x + a + k + bm) x^i y^j ⊗ t^{k+m}`
/// with `x = d_{-1}`, `y = d_0` in normal order.
pub fn example3_act(
    mu: (&Scalar, &Scalar),
    lambda: &Scalar,
    a: &Scalar,
    b: &Scalar,
    m: i64,
    (i, j, k): (u32, u32, i64),
) -> Result<LoopElement> {
    let lam_m = lambda.pow(m).ok_or(Error::ZeroLambda)?;
    let ms = Scalar::from_int(m);
    let mut inner = Bivariate::new();
    add_into(&mut inner, &(1, j), &Scalar::ONE);
    add_into(&mut inner, &(0, j + 1), &ms);
    let m2 = &(&ms * &ms) * &Scalar::ratio(1, 2);
    let m3 = &(&(&ms * &ms) * &ms) * &Scalar::ratio(1, 6);
    for (coef, shift) in [(&m2 * mu.0, -1), (&m3 * mu.1, -2)] {
        for (key, c) in binomial_power(j, &Scalar::from_int(shift), false) {
            add_into(&mut inner, &key, &(&coef * &c));
        }
    }
    let mut total = biv_mul(&binomial_power(i, &-&ms, true), &inner);
    for c in total.values_mut() {
        *c *= &lam_m;
    }
    let diag = &(&(a + &Scalar::from_int(k)) + &(b * &ms));
    add_into(&mut total, &(i + 1, j), &-Scalar::ONE);
    add_into(&mut total, &(i, j), diag);
    let mut out = LoopElement::zero();
    for ((ex, ey), c) in total {
        let mono = PbwMonomial::from_pairs(&[(-1, ex), (0, ey)]);
        out.add_term(&(k + m, mono), &c);
    }
    Ok(out)
}
