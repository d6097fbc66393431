//! Loop modules `W ⊗ C[t, t^{-1}]`.
//!
//! `L(W, λ, a, b)` carries
//!
//! ```text
//! d_k (w ⊗ t^j) = λ^k Σ_{i>=0} (k^i / i!) (d_{i-1} w) ⊗ t^{k+j} - (d_{-1} w) ⊗ t^{k+j} + (a + kb + j) w ⊗ t^{k+j}
//! ```
//!
//! and `z` acts by zero. The series is finite because `d_i w = 0` once `i`
//! passes the annihilation bound of `w`. The intermediate series `A_{a,b}`
//! and the Borel-level modules `N(B_(twist), a)` share the same element type.

use alloc::collections::BTreeMap;
use alloc::rc::Rc;
use alloc::vec::Vec;
use core::cell::RefCell;
use core::fmt;

use crate::algebra::OperatorWord;
use crate::error::{Error, Result};
use crate::pbw::{Level, ModuleElement, PbwEngine, PbwMonomial, Terms, VacuumSpec};
use crate::scalar::{exp_series_coefficients, Scalar};
use crate::sparse::{add_into, axpy};

/// The Witt module `W` a loop module is built from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WModule {
    /// The one-dimensional trivial module; gives the intermediate series.
    Trivial,
    Induced(VacuumSpec),
}

impl WModule {
    pub fn spec(&self) -> Option<&VacuumSpec> {
        match self {
            WModule::Trivial => None,
            WModule::Induced(s) => Some(s),
        }
    }
}

/// Parameters of `L(W, λ, a, b)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LParams {
    w: WModule,
    lambda: Scalar,
    a: Scalar,
    b: Scalar,
}

impl LParams {
    pub fn new(w: WModule, lambda: Scalar, a: Scalar, b: Scalar) -> Result<Self> {
        if lambda.is_zero() {
            return Err(Error::ZeroLambda);
        }
        Ok(LParams { w, lambda, a, b })
    }

    pub fn induced(spec: VacuumSpec, lambda: Scalar, a: Scalar, b: Scalar) -> Result<Self> {
        Self::new(WModule::Induced(spec), lambda, a, b)
    }

    pub fn w(&self) -> &WModule {
        &self.w
    }

    pub fn spec(&self) -> Option<&VacuumSpec> {
        self.w.spec()
    }

    pub fn lambda(&self) -> &Scalar {
        &self.lambda
    }

    pub fn a(&self) -> &Scalar {
        &self.a
    }

    pub fn b(&self) -> &Scalar {
        &self.b
    }

    pub fn with_a(&self, a: Scalar) -> Self {
        LParams { a, ..self.clone() }
    }

    pub fn with_b(&self, b: Scalar) -> Self {
        LParams { b, ..self.clone() }
    }

    pub fn with_lambda(&self, lambda: Scalar) -> Result<Self> {
        Self::new(self.w.clone(), lambda, self.a.clone(), self.b.clone())
    }
}

/// Parameters of `N(B_(twist), a)` with `B` the Borel-level induced module.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NParams {
    pub spec: VacuumSpec,
    pub a: Scalar,
    pub twist: Scalar,
}

/// Index of a basis vector `w ⊗ t^n`: loop index first, then the monomial.
pub type LoopKey = (i64, PbwMonomial);

/// A finite combination of `w ⊗ t^n` with `w` a PBW monomial.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct LoopElement {
    terms: BTreeMap<LoopKey, Scalar>,
}

impl LoopElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn term(m: PbwMonomial, n: i64, c: Scalar) -> Self {
        let mut out = Self::zero();
        out.add_term(&(n, m), &c);
        out
    }

    /// `w ⊗ t^n`.
    pub fn from_vector(w: &ModuleElement, n: i64) -> Self {
        let mut out = Self::zero();
        for (m, c) in w.terms() {
            out.add_term(&(n, m.clone()), c);
        }
        out
    }

    pub fn from_terms<I: IntoIterator<Item = (LoopKey, Scalar)>>(it: I) -> Self {
        let mut out = Self::zero();
        for (k, c) in it {
            out.add_term(&k, &c);
        }
        out
    }

    pub fn add_term(&mut self, key: &LoopKey, c: &Scalar) {
        add_into(&mut self.terms, key, c);
    }

    pub fn terms(&self) -> &BTreeMap<LoopKey, Scalar> {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &PbwMonomial, n: i64) -> Scalar {
        self.terms.get(&(n, m.clone())).cloned().unwrap_or(Scalar::ZERO)
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        let mut out = Self::zero();
        axpy(&mut out.terms, c, &self.terms);
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        axpy(&mut out.terms, &Scalar::ONE, &other.terms);
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        axpy(&mut out.terms, &-Scalar::ONE, &other.terms);
        out
    }

    /// `self += c * other`.
    pub fn axpy(&mut self, c: &Scalar, other: &Self) {
        axpy(&mut self.terms, c, &other.terms);
    }

    /// Distinct loop indices, ascending.
    pub fn loop_indices(&self) -> Vec<i64> {
        let mut out: Vec<i64> = self.terms.keys().map(|(n, _)| *n).collect();
        out.dedup();
        out
    }

    /// The component at loop index `n`, as a vector of `W`.
    pub fn component(&self, n: i64) -> ModuleElement {
        let mut out = ModuleElement::zero(Level::W);
        for ((idx, m), c) in self.terms.range((n, PbwMonomial::vacuum())..) {
            if *idx != n {
                break;
            }
            out.add_term(m, c);
        }
        out
    }

    /// The loop index shared by all terms, if any.
    pub fn homogeneous_index(&self) -> Option<i64> {
        match self.loop_indices().as_slice() {
            [n] => Some(*n),
            _ => None,
        }
    }

    pub fn max_d_minus_one_degree(&self) -> u32 {
        self.terms
            .keys()
            .map(|(_, m)| m.d_minus_one_degree())
            .max()
            .unwrap_or(0)
    }

    pub fn max_b_degree(&self) -> u32 {
        self.terms.keys().map(|(_, m)| m.b_degree()).max().unwrap_or(0)
    }

    /// Keeps the terms selected by `keep`.
    pub fn filter<F: Fn(i64, &PbwMonomial) -> bool>(&self, keep: F) -> Self {
        LoopElement {
            terms: self
                .terms
                .iter()
                .filter(|((n, m), _)| keep(*n, m))
                .map(|(k, c)| (k.clone(), c.clone()))
                .collect(),
        }
    }
}

impl fmt::Debug for LoopElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for ((n, m), c) in &self.terms {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            write!(f, "{}*{} (x) t^{}", c, m, n)?;
        }
        Ok(())
    }
}

/// A module whose vectors are [`LoopElement`]s and whose `d_0` acts by
/// `weight_offset() + n` on loop index `n`.
pub trait LoopAction {
    /// `d_k · v`.
    fn act(&self, k: i64, v: &LoopElement) -> Result<LoopElement>;

    /// The `a` in `d_0 (w ⊗ t^n) = (a + n)(w ⊗ t^n)`.
    fn weight_offset(&self) -> &Scalar;

    fn weight_of(&self, v: &LoopElement) -> Result<Scalar> {
        weight_of(self.weight_offset(), v)
    }
}

/// `a + n` for a nonzero `v` concentrated at loop index `n`.
pub fn weight_of(a: &Scalar, v: &LoopElement) -> Result<Scalar> {
    if v.is_zero() {
        return Err(Error::ZeroElement);
    }
    let n = v.homogeneous_index().ok_or(Error::NotHomogeneous)?;
    Ok(a + &Scalar::from_int(n))
}

type PartCache = RefCell<BTreeMap<(i64, PbwMonomial), Rc<Terms>>>;

/// Cached evaluator for `L(W, λ, a, b)`.
pub struct LoopModule {
    params: LParams,
    engine: Option<PbwEngine>,
    parts: PartCache,
}

impl LoopModule {
    pub fn new(params: LParams) -> Self {
        let engine = params.spec().cloned().map(PbwEngine::new);
        LoopModule {
            params,
            engine,
            parts: RefCell::new(BTreeMap::new()),
        }
    }

    pub fn params(&self) -> &LParams {
        &self.params
    }

    pub fn engine(&self) -> Option<&PbwEngine> {
        self.engine.as_ref()
    }

    // λ^k Σ_i (k^i/i!) d_{i-1} w - d_{-1} w + (a + kb) w, without the loop shift
    fn part(&self, k: i64, w: &PbwMonomial) -> Result<Rc<Terms>> {
        let key = (k, w.clone());
        if let Some(hit) = self.parts.borrow().get(&key) {
            return Ok(Rc::clone(hit));
        }
        let p = &self.params;
        let mut out = Terms::new();
        let diag = &p.a + &(&Scalar::from_int(k) * &p.b);
        match &self.engine {
            None => {
                if !w.is_vacuum() {
                    return Err(Error::NotPbwGenerator {
                        index: w.factors().next().map(|f| f.0).unwrap_or(0),
                    });
                }
                add_into(&mut out, w, &diag);
            }
            Some(engine) => {
                let lam_k = p.lambda.pow(k).ok_or(Error::ZeroLambda)?;
                let r = engine.spec().r() as i64;
                let top = (2 * r + w.d_minus_one_degree() as i64 + 1) as u32;
                let coeffs = exp_series_coefficients(k, top);
                for (i, c) in coeffs.iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    let img = engine.act_monomial(i as i64 - 1, w);
                    axpy(&mut out, &(&lam_k * c), &img);
                }
                axpy(&mut out, &-Scalar::ONE, &engine.act_monomial(-1, w));
                add_into(&mut out, w, &diag);
            }
        }
        let out = Rc::new(out);
        self.parts.borrow_mut().insert(key, Rc::clone(&out));
        Ok(out)
    }

    /// Number of terms kept in the per-generator caches.
    pub fn cache_len(&self) -> usize {
        self.parts.borrow().len()
    }
}

impl LoopAction for LoopModule {
    fn act(&self, k: i64, v: &LoopElement) -> Result<LoopElement> {
        let mut out = LoopElement::zero();
        for ((n, w), c) in &v.terms {
            let target = n + k;
            let part = self.part(k, w)?;
            for (m, pc) in part.iter() {
                out.add_term(&(target, m.clone()), &(c * pc));
            }
            out.add_term(&(target, w.clone()), &(c * &Scalar::from_int(*n)));
        }
        Ok(out)
    }

    fn weight_offset(&self) -> &Scalar {
        &self.params.a
    }
}

/// `d_k · v` in `L(W, λ, a, b)`.
pub fn l_act(p: &LParams, k: i64, v: &LoopElement) -> Result<LoopElement> {
    LoopModule::new(p.clone()).act(k, v)
}

/// `d_m v_n = (a + n + bm) v_{n+m}`; returns the coefficient and the target index.
pub fn a_act(a: &Scalar, b: &Scalar, m: i64, n: i64) -> (Scalar, i64) {
    let c = &(a + &Scalar::from_int(n)) + &(b * &Scalar::from_int(m));
    (c, n + m)
}

/// The intermediate series `A_{a,b}` on vectors `|vac> ⊗ t^n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntermediateSeries {
    pub a: Scalar,
    pub b: Scalar,
}

impl LoopAction for IntermediateSeries {
    fn act(&self, k: i64, v: &LoopElement) -> Result<LoopElement> {
        let mut out = LoopElement::zero();
        for ((n, w), c) in &v.terms {
            if !w.is_vacuum() {
                return Err(Error::Precondition("intermediate series vectors are |vac> (x) t^n"));
            }
            let (coeff, target) = a_act(&self.a, &self.b, k, *n);
            out.add_term(&(target, w.clone()), &(c * &coeff));
        }
        Ok(out)
    }

    fn weight_offset(&self) -> &Scalar {
        &self.a
    }
}

/// Cached evaluator for `N(B_(twist), a)`:
/// `d_k (w ⊗ t^n) = (a + n) w + k (d_0 + twist) w + Σ_{j>=2} (k^j/j!) d_{j-1} w`, all at `t^{n+k}`.
pub struct NModule {
    params: NParams,
    engine: PbwEngine,
    parts: PartCache,
}

impl NModule {
    pub fn new(params: NParams) -> Self {
        let engine = PbwEngine::new(params.spec.clone());
        NModule {
            params,
            engine,
            parts: RefCell::new(BTreeMap::new()),
        }
    }

    pub fn params(&self) -> &NParams {
        &self.params
    }

    fn part(&self, k: i64, w: &PbwMonomial) -> Result<Rc<Terms>> {
        if w.d_minus_one_degree() != 0 {
            return Err(Error::IndexBelowLevel { index: -1, lo: 0 });
        }
        let key = (k, w.clone());
        if let Some(hit) = self.parts.borrow().get(&key) {
            return Ok(Rc::clone(hit));
        }
        let p = &self.params;
        let ks = Scalar::from_int(k);
        let mut out = Terms::new();
        add_into(&mut out, w, &(&p.a + &(&ks * &p.twist)));
        let top = 2 * p.spec.r() + 1;
        let coeffs = exp_series_coefficients(k, top);
        for (i, c) in coeffs.iter().enumerate().skip(1) {
            if c.is_zero() {
                continue;
            }
            axpy(&mut out, c, &self.engine.act_monomial(i as i64 - 1, w));
        }
        let out = Rc::new(out);
        self.parts.borrow_mut().insert(key, Rc::clone(&out));
        Ok(out)
    }
}

impl LoopAction for NModule {
    fn act(&self, k: i64, v: &LoopElement) -> Result<LoopElement> {
        let mut out = LoopElement::zero();
        for ((n, w), c) in &v.terms {
            let target = n + k;
            let part = self.part(k, w)?;
            for (m, pc) in part.iter() {
                out.add_term(&(target, m.clone()), &(c * pc));
            }
            out.add_term(&(target, w.clone()), &(c * &Scalar::from_int(*n)));
        }
        Ok(out)
    }

    fn weight_offset(&self) -> &Scalar {
        &self.params.a
    }
}

/// `d_k · v` in `N(B_(twist), a)`.
pub fn n_act(p: &NParams, k: i64, v: &LoopElement) -> Result<LoopElement> {
    NModule::new(p.clone()).act(k, v)
}

/// Applies a formal word; within a summand the rightmost generator acts first.
pub fn apply_word<M: LoopAction + ?Sized>(word: &OperatorWord, module: &M, v: &LoopElement) -> Result<LoopElement> {
    let mut out = LoopElement::zero();
    for (c, idx) in word.summands() {
        let mut cur = v.clone();
        for k in idx.iter().rev() {
            cur = module.act(*k, &cur)?;
        }
        out.axpy(c, &cur);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::x_word;
    use alloc::vec;

    fn s(n: i64) -> Scalar {
        Scalar::from_int(n)
    }

    fn vac(n: i64) -> LoopElement {
        LoopElement::term(PbwMonomial::vacuum(), n, Scalar::ONE)
    }

    fn verma_l(bp: i64, lam: Scalar, a: Scalar, b: Scalar) -> LParams {
        LParams::induced(VacuumSpec::verma(s(bp)), lam, a, b).unwrap()
    }

    #[test]
    fn weight_action() {
        let p = verma_l(1, s(2), Scalar::ratio(1, 3), s(5));
        let m = PbwMonomial::d_minus_one_power(2);
        let v = LoopElement::term(m.clone(), 3, Scalar::ONE);
        let got = l_act(&p, 0, &v).unwrap();
        assert_eq!(got, v.scale(&(&Scalar::ratio(1, 3) + &s(3))));
    }

    #[test]
    fn first_raising_step() {
        // λ=2, b'=1: d_1 (vac ⊗ t^0) = (d_{-1} + 2) vac ⊗ t^1
        let p = verma_l(1, s(2), Scalar::ZERO, Scalar::ZERO);
        let got = l_act(&p, 1, &vac(0)).unwrap();
        let want = LoopElement::term(PbwMonomial::d_minus_one_power(1), 1, Scalar::ONE).add(&vac(1).scale(&s(2)));
        assert_eq!(got, want);
    }

    #[test]
    fn lambda_must_be_nonzero() {
        assert_eq!(
            LParams::induced(VacuumSpec::verma(s(1)), Scalar::ZERO, s(0), s(0)),
            Err(Error::ZeroLambda)
        );
    }

    #[test]
    fn intermediate_series_formula() {
        assert_eq!(a_act(&s(0), &s(0), 3, 2), (s(2), 5));
        assert_eq!(a_act(&Scalar::ratio(1, 2), &s(1), -1, 0), (Scalar::ratio(-1, 2), -1));
        let a = Scalar::ratio(3, 7);
        assert_eq!(a_act(&a, &s(9), 0, 4), (&a + &s(4), 4));
    }

    #[test]
    fn trivial_w_reproduces_intermediate_series() {
        let a = Scalar::ratio(1, 2);
        let b = s(3);
        let p = LParams::new(WModule::Trivial, s(5), a.clone(), b.clone()).unwrap();
        let series = IntermediateSeries {
            a: a.clone(),
            b: b.clone(),
        };
        for k in -3..=3 {
            for n in -3..=3 {
                assert_eq!(l_act(&p, k, &vac(n)).unwrap(), series.act(k, &vac(n)).unwrap());
            }
        }
    }

    #[test]
    fn n_module_examples() {
        let spec = VacuumSpec::verma(s(1));
        let n0 = NParams {
            spec: spec.clone(),
            a: Scalar::ZERO,
            twist: Scalar::ZERO,
        };
        for m in -3..=3 {
            for n in -3..=3 {
                assert_eq!(n_act(&n0, m, &vac(n)).unwrap(), vac(n + m).scale(&s(m + n)));
            }
        }
        let b = Scalar::ratio(2, 5);
        let nt = NParams {
            spec,
            a: Scalar::ZERO,
            twist: b.clone(),
        };
        let got = n_act(&nt, 2, &vac(1)).unwrap();
        assert_eq!(got, vac(3).scale(&(&s(1) + &(&s(2) * &(&s(1) + &b)))));
    }

    #[test]
    fn weight_bookkeeping() {
        let a = Scalar::ratio(1, 3);
        let v = LoopElement::term(PbwMonomial::d_minus_one_power(1), 2, s(4));
        assert_eq!(weight_of(&a, &v).unwrap(), Scalar::ratio(7, 3));
        assert_eq!(weight_of(&a, &vac(0).add(&vac(1))), Err(Error::NotHomogeneous));
        assert_eq!(weight_of(&a, &LoopElement::zero()), Err(Error::ZeroElement));
        assert_eq!(weight_of(&Scalar::ZERO, &vac(0)).unwrap(), Scalar::ZERO);
    }

    #[test]
    fn words() {
        let p = verma_l(2, s(3), Scalar::ratio(1, 4), s(2));
        let module = LoopModule::new(p.clone());
        let v = LoopElement::term(PbwMonomial::d_minus_one_power(1), -2, Scalar::ONE);
        let sq = OperatorWord::new(vec![(Scalar::ONE, vec![0, 0])]);
        let w = &Scalar::ratio(1, 4) + &s(-2);
        assert_eq!(apply_word(&sq, &module, &v).unwrap(), v.scale(&(&w * &w)));
        for (m, n) in [(2, -1), (3, -3), (-2, 1)] {
            let lhs = apply_word(&OperatorWord::commutator(m, n), &module, &v).unwrap();
            let rhs = module.act(m + n, &v).unwrap().scale(&s(n - m));
            assert_eq!(lhs, rhs);
        }
        let series = IntermediateSeries {
            a: Scalar::ratio(1, 2),
            b: s(3),
        };
        assert!(apply_word(&x_word(7, 2), &series, &vac(-4)).unwrap().is_zero());
    }
}
