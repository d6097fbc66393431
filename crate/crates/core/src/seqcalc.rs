//! Shift calculus on exponential-polynomial sequences `Z -> P`.
//!
//! A polynomial `p(x) = Σ p_i x^i` acts on a sequence by
//! `(p · T)(m) = Σ p_i T(m + i)`. Sequences of the form
//! `m ↦ Σ λ_i^m f_i(m)` with vector-valued polynomials `f_i` are closed under
//! this action, which is what [`shift_act`] computes.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::linalg::solve;
use crate::scalar::{binomial, Scalar};

/// A univariate polynomial with exact coefficients, lowest degree first and
/// no trailing zeros.
#[derive(Clone, PartialEq, Eq, Default, Hash)]
pub struct Poly {
    coeffs: Vec<Scalar>,
}

impl Poly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: Scalar) -> Self {
        Self::new(vec![c])
    }

    pub fn one() -> Self {
        Self::constant(Scalar::ONE)
    }

    pub fn x() -> Self {
        Self::new(vec![Scalar::ZERO, Scalar::ONE])
    }

    /// `x - c`.
    pub fn x_minus(c: &Scalar) -> Self {
        Self::new(vec![-c, Scalar::ONE])
    }

    pub fn new(mut coeffs: Vec<Scalar>) -> Self {
        while coeffs.last().is_some_and(Scalar::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    /// `c · x^k`.
    pub fn monomial(k: usize, c: Scalar) -> Self {
        let mut v = vec![Scalar::ZERO; k + 1];
        v[k] = c;
        Self::new(v)
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Scalar {
        self.coeffs.get(i).cloned().unwrap_or(Scalar::ZERO)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Scalar {
        self.coeffs.last().cloned().unwrap_or(Scalar::ZERO)
    }

    pub fn eval(&self, x: &Scalar) -> Scalar {
        self.coeffs.iter().rev().fold(Scalar::ZERO, |acc, c| &(&acc * x) + c)
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|i| &self.coeff(i) + &other.coeff(i)).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-Scalar::ONE))
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        Self::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![Scalar::ZERO; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += &(a * b);
            }
        }
        Self::new(out)
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(), |acc, _| acc.mul(self))
    }

    /// `m ↦ f(m + s)`.
    pub fn shifted(&self, s: &Scalar) -> Self {
        let n = self.coeffs.len();
        let mut out = vec![Scalar::ZERO; n];
        for (k, c) in self.coeffs.iter().enumerate() {
            // c (m + s)^k = c Σ_j C(k,j) s^{k-j} m^j
            let mut spow = Scalar::ONE;
            for j in (0..=k).rev() {
                out[j] += &(&(c * &binomial(k as u32, j as u32)) * &spow);
                spow = &spow * s;
            }
        }
        Self::new(out)
    }

    /// Quotient and remainder; `None` when dividing by zero.
    pub fn div_rem(&self, d: &Self) -> Option<(Self, Self)> {
        let dd = d.degree()?;
        let inv = d.leading().recip()?;
        let mut rem = self.coeffs.clone();
        let mut quo = vec![Scalar::ZERO; self.coeffs.len().saturating_sub(dd).max(1)];
        while rem.len() > dd && !rem.is_empty() {
            let top = rem.len() - 1;
            let c = &rem[top] * &inv;
            let shift = top - dd;
            for (i, dc) in d.coeffs.iter().enumerate() {
                rem[shift + i] -= &(&c * dc);
            }
            quo[shift] = c;
            rem.pop();
            while rem.last().is_some_and(Scalar::is_zero) {
                rem.pop();
            }
        }
        Some((Self::new(quo), Self::new(rem)))
    }

    pub fn divides(&self, other: &Self) -> bool {
        other.div_rem(self).is_some_and(|(_, r)| r.is_zero())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            write!(f, "{}*x^{}", c, i)?;
        }
        Ok(())
    }
}

/// `m ↦ Σ_λ λ^m f_λ(m)` with `f_λ` a vector of coordinate polynomials.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ExpPolySequence {
    dim: usize,
    terms: BTreeMap<Scalar, Vec<Poly>>,
}

impl ExpPolySequence {
    pub fn zero(dim: usize) -> Self {
        ExpPolySequence {
            dim,
            terms: BTreeMap::new(),
        }
    }

    /// `m ↦ λ^m f(m)`.
    pub fn single(lambda: Scalar, f: Vec<Poly>) -> Result<Self> {
        let mut out = Self::zero(f.len());
        out.add_component(lambda, f)?;
        Ok(out)
    }

    /// `m ↦ λ^m m^k v`.
    pub fn power_term(lambda: Scalar, k: u32, v: &[Scalar]) -> Result<Self> {
        Self::single(
            lambda,
            v.iter().map(|c| Poly::monomial(k as usize, c.clone())).collect(),
        )
    }

    pub fn add_component(&mut self, lambda: Scalar, f: Vec<Poly>) -> Result<()> {
        if lambda.is_zero() {
            return Err(Error::ZeroLambda);
        }
        if f.len() != self.dim {
            return Err(Error::DimensionMismatch);
        }
        let merged: Vec<Poly> = match self.terms.get(&lambda) {
            Some(old) => old.iter().zip(&f).map(|(a, b)| a.add(b)).collect(),
            None => f,
        };
        if merged.iter().all(Poly::is_zero) {
            self.terms.remove(&lambda);
        } else {
            self.terms.insert(lambda, merged);
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn terms(&self) -> &BTreeMap<Scalar, Vec<Poly>> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn eval(&self, m: i64) -> Vec<Scalar> {
        let ms = Scalar::from_int(m);
        let mut out = vec![Scalar::ZERO; self.dim];
        for (lam, fs) in &self.terms {
            let lm = lam.pow(m).expect("nonzero λ");
            for (o, f) in out.iter_mut().zip(fs) {
                *o += &(&lm * &f.eval(&ms));
            }
        }
        out
    }

    /// Coefficient vector of `λ^m m^j`, if present.
    pub fn component(&self, lambda: &Scalar, j: usize) -> Vec<Scalar> {
        match self.terms.get(lambda) {
            Some(fs) => fs.iter().map(|f| f.coeff(j)).collect(),
            None => vec![Scalar::ZERO; self.dim],
        }
    }

    /// Nonzero `(λ, j, v)` components, ordered by `λ` then `j`.
    pub fn components(&self) -> Vec<(Scalar, u32, Vec<Scalar>)> {
        let mut out = Vec::new();
        for (lam, fs) in &self.terms {
            let top = fs.iter().filter_map(Poly::degree).max().unwrap_or(0);
            for j in 0..=top {
                let v: Vec<Scalar> = fs.iter().map(|f| f.coeff(j)).collect();
                if v.iter().any(|c| !c.is_zero()) {
                    out.push((lam.clone(), j as u32, v));
                }
            }
        }
        out
    }
}

/// `(p · T)(m) = Σ_i p_i T(m + i)` in closed form.
pub fn shift_act(p: &Poly, t: &ExpPolySequence) -> ExpPolySequence {
    let mut out = ExpPolySequence::zero(t.dim);
    for (lam, fs) in &t.terms {
        let mut acc = vec![Poly::zero(); fs.len()];
        let mut lpow = Scalar::ONE;
        for (i, pi) in p.coeffs().iter().enumerate() {
            if !pi.is_zero() {
                let c = pi * &lpow;
                let s = Scalar::from_int(i as i64);
                for (a, f) in acc.iter_mut().zip(fs) {
                    *a = a.add(&f.shifted(&s).scale(&c));
                }
            }
            lpow = &lpow * lam;
        }
        out.add_component(lam.clone(), acc).expect("same λ and dimension");
    }
    out
}

/// Whether `p` annihilates `m ↦ λ^m m^k`, decided both by applying `p` and by
/// testing `(x - λ)^{k+1} | p`.
pub fn annihilator_check(p: &Poly, lambda: &Scalar, k: u32) -> Result<bool> {
    if lambda.is_zero() {
        return Err(Error::ZeroLambda);
    }
    let seq = ExpPolySequence::power_term(lambda.clone(), k, &[Scalar::ONE])?;
    let by_action = shift_act(p, &seq).is_zero();
    let by_division = Poly::x_minus(lambda).pow(k + 1).divides(p);
    if by_action != by_division {
        return Err(Error::Disagreement("shift action and divisibility"));
    }
    Ok(by_action)
}

/// Recovers the components `v_{i,j}` of `T(m) = Σ λ_i^m m^j v_{i,j}` from
/// samples by one exact solve in the basis `λ_i^m m^j`, `j <= k`. Every
/// sample must be reproduced; only nonzero components are returned.
pub fn extract_components(
    samples: &[(i64, Vec<Scalar>)],
    lambdas: &[Scalar],
    k: u32,
) -> Result<Vec<(Scalar, u32, Vec<Scalar>)>> {
    if lambdas.iter().any(Scalar::is_zero) {
        return Err(Error::ZeroLambda);
    }
    for (i, l) in lambdas.iter().enumerate() {
        if lambdas[..i].contains(l) {
            return Err(Error::DuplicateLambda);
        }
    }
    let needed = lambdas.len() * (k as usize + 1);
    let mut sorted: Vec<&(i64, Vec<Scalar>)> = samples.iter().collect();
    sorted.sort_by_key(|s| s.0);
    sorted.dedup_by_key(|s| s.0);
    if sorted.len() < needed || needed == 0 {
        return Err(Error::InsufficientSamples {
            needed,
            got: sorted.len(),
        });
    }
    let dim = sorted[0].1.len();
    if samples.iter().any(|s| s.1.len() != dim) {
        return Err(Error::DimensionMismatch);
    }
    let basis = |m: i64| -> Vec<Scalar> {
        let ms = Scalar::from_int(m);
        let mut row = Vec::with_capacity(needed);
        for lam in lambdas {
            let lm = lam.pow(m).expect("nonzero λ");
            let mut mp = Scalar::ONE;
            for _ in 0..=k {
                row.push(&lm * &mp);
                mp = &mp * &ms;
            }
        }
        row
    };
    let used = &sorted[..needed];
    let a: Vec<Vec<Scalar>> = used.iter().map(|s| basis(s.0)).collect();
    let b: Vec<Vec<Scalar>> = used.iter().map(|s| s.1.clone()).collect();
    let x = solve(&a, &b).ok_or(Error::InsufficientSamples {
        needed,
        got: sorted.len(),
    })?;
    for (m, v) in samples {
        let row = basis(*m);
        for (c, want) in v.iter().enumerate() {
            let got = row
                .iter()
                .zip(&x)
                .fold(Scalar::ZERO, |acc, (r, xr)| &acc + &(r * &xr[c]));
            if &got != want {
                return Err(Error::InconsistentSamples);
            }
        }
    }
    let mut out = Vec::new();
    for (i, lam) in lambdas.iter().enumerate() {
        for j in 0..=k {
            let v = x[i * (k as usize + 1) + j as usize].clone();
            if v.iter().any(|c| !c.is_zero()) {
                out.push((lam.clone(), j, v));
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::factorial;
    use proptest::prelude::*;

    fn s(n: i64) -> Scalar {
        Scalar::from_int(n)
    }

    fn lambdas() -> Vec<Scalar> {
        vec![s(2), s(-1), Scalar::ratio(1, 2), Scalar::i()]
    }

    #[test]
    fn polynomial_basics() {
        let p = Poly::x_minus(&s(2)).mul(&Poly::x_minus(&s(-2)));
        assert_eq!(p, Poly::new(vec![s(-4), s(0), s(1)]));
        assert_eq!(p.eval(&s(3)), s(5));
        let (q, r) = p.div_rem(&Poly::x_minus(&s(2))).unwrap();
        assert_eq!(q, Poly::x_minus(&s(-2)));
        assert!(r.is_zero());
        assert_eq!(Poly::x().pow(2).shifted(&s(1)), Poly::new(vec![s(1), s(2), s(1)]));
        assert!(Poly::x_minus(&s(1)).divides(&p.mul(&Poly::x_minus(&s(1)))));
        assert!(!Poly::x_minus(&s(1)).divides(&p));
    }

    #[test]
    fn shift_examples() {
        // (x - 2) · (2^m m) = 2^{m+1}
        let t = ExpPolySequence::power_term(s(2), 1, &[s(1)]).unwrap();
        let out = shift_act(&Poly::x_minus(&s(2)), &t);
        assert_eq!(out, ExpPolySequence::power_term(s(2), 0, &[s(2)]).unwrap());
        assert_eq!(shift_act(&Poly::one(), &t), t);
        let kill = Poly::x_minus(&s(2)).pow(2);
        assert!(shift_act(&kill, &t).is_zero());
    }

    #[test]
    fn annihilator_examples() {
        assert!(annihilator_check(&Poly::x_minus(&s(2)).pow(3), &s(2), 2).unwrap());
        assert!(!annihilator_check(&Poly::x_minus(&s(2)).pow(2), &s(2), 2).unwrap());
        assert!(annihilator_check(&Poly::x_minus(&s(1)), &s(1), 0).unwrap());
        assert_eq!(annihilator_check(&Poly::one(), &s(0), 0), Err(Error::ZeroLambda));
    }

    #[test]
    fn shifted_power_is_factorial() {
        for lam in lambdas() {
            for k in 0..=6u32 {
                let t = ExpPolySequence::power_term(lam.clone(), k, &[s(1)]).unwrap();
                let out = shift_act(&Poly::x_minus(&lam).pow(k), &t);
                let want = &factorial(k) * &lam.pow(k as i64).unwrap();
                let expect = ExpPolySequence::power_term(lam.clone(), 0, core::slice::from_ref(&want)).unwrap();
                assert_eq!(out, expect, "λ={lam} k={k}");
                for m in -5..=5 {
                    assert_eq!(out.eval(m), vec![&want * &lam.pow(m).unwrap()]);
                }
            }
        }
    }

    #[test]
    fn extraction_examples() {
        let v = vec![s(3), s(-1)];
        let got = extract_components(&[(0, v.clone())], &[s(5)], 0).unwrap();
        assert_eq!(got, vec![(s(5), 0, v)]);

        // T(m) = u + 2^m v
        let (u, w) = (vec![s(1), s(0)], vec![s(0), s(1)]);
        let t0 = vec![s(1), s(1)];
        let t1 = vec![s(1), s(2)];
        let got = extract_components(&[(0, t0), (1, t1)], &[s(1), s(2)], 0).unwrap();
        assert_eq!(got, vec![(s(1), 0, u), (s(2), 0, w)]);
    }

    #[test]
    fn extraction_errors() {
        assert_eq!(
            extract_components(&[(0, vec![s(1)])], &[s(1), s(1)], 0),
            Err(Error::DuplicateLambda)
        );
        assert_eq!(
            extract_components(&[(0, vec![s(1)])], &[s(1), s(2)], 0),
            Err(Error::InsufficientSamples { needed: 2, got: 1 })
        );
        let bad = [(0, vec![s(1)]), (1, vec![s(1)]), (2, vec![s(7)])];
        assert_eq!(extract_components(&bad, &[s(1)], 0), Err(Error::InconsistentSamples));
    }

    fn small() -> impl Strategy<Value = Scalar> {
        (-6i64..=6, 1i64..=3).prop_map(|(n, d)| Scalar::ratio(n, d))
    }

    fn poly(deg: usize) -> impl Strategy<Value = Poly> {
        proptest::collection::vec(small(), deg + 1).prop_map(Poly::new)
    }

    proptest! {
        #[test]
        fn shift_with_cofactor(li in 0usize..4, k in 0u32..5, p in poly(4)) {
            let lam = lambdas()[li].clone();
            let t = ExpPolySequence::power_term(lam.clone(), k, &[s(1)]).unwrap();
            let out = shift_act(&p.mul(&Poly::x_minus(&lam).pow(k)), &t);
            let want = &(&factorial(k) * &lam.pow(k as i64).unwrap()) * &p.eval(&lam);
            for m in -3..=3 {
                prop_assert_eq!(out.eval(m), vec![&want * &lam.pow(m).unwrap()]);
            }
        }

        #[test]
        fn divisibility_criterion(li in 0usize..4, k in 0u32..5, extra in 0u32..3, p in poly(2)) {
            let lam = lambdas()[li].clone();
            let base = Poly::x_minus(&lam).pow(k + extra);
            let q = base.mul(&p);
            let kills = annihilator_check(&q, &lam, k).unwrap();
            if p.is_zero() || extra >= 1 {
                prop_assert!(kills);
            } else {
                prop_assert_eq!(kills, p.eval(&lam).is_zero());
            }
        }

        #[test]
        fn extraction_round_trip(
            lams in proptest::sample::subsequence(vec![1i64, 2, -1, 3, -2], 1..=3),
            k in 0u32..=3,
            dim in 1usize..=4,
            seed in proptest::collection::vec(small(), 64),
            start in -4i64..=2,
        ) {
            let lams: Vec<Scalar> = lams.into_iter().map(|l| Scalar::ratio(l, 1 + (l.abs() % 2))).collect();
            let mut seq = ExpPolySequence::zero(dim);
            let mut it = seed.iter().cycle();
            for lam in &lams {
                let f = (0..dim)
                    .map(|_| Poly::new((0..=k).map(|_| it.next().unwrap().clone()).collect()))
                    .collect();
                seq.add_component(lam.clone(), f).unwrap();
            }
            let n = lams.len() * (k as usize + 1) + 2;
            let samples: Vec<_> = (start..start + n as i64).map(|m| (m, seq.eval(m))).collect();
            let got = extract_components(&samples, &lams, k).unwrap();
            let mut got_sorted = got.clone();
            got_sorted.sort_by(|x, y| x.0.cmp(&y.0).then(x.1.cmp(&y.1)));
            prop_assert_eq!(got_sorted, seq.components());
        }

        #[test]
        fn cofactor_isolates_top_component(
            k in 0u32..=2,
            seed in proptest::collection::vec(small(), 24),
        ) {
            let lams = [s(2), s(-1), Scalar::ratio(1, 3)];
            let mut seq = ExpPolySequence::zero(2);
            let mut it = seed.iter().cycle();
            for lam in &lams {
                let f = (0..2)
                    .map(|_| Poly::new((0..=k).map(|_| it.next().unwrap().clone()).collect()))
                    .collect();
                seq.add_component(lam.clone(), f).unwrap();
            }
            for (i, li) in lams.iter().enumerate() {
                let q = lams
                    .iter()
                    .enumerate()
                    .filter(|(j, _)| *j != i)
                    .fold(Poly::one(), |acc, (_, lj)| acc.mul(&Poly::x_minus(lj).pow(k + 1)));
                let pi = q.mul(&Poly::x_minus(li).pow(k));
                let out = shift_act(&pi, &seq);
                let factor = &(&q.eval(li) * &factorial(k)) * &li.pow(k as i64).unwrap();
                let top: Vec<Scalar> = seq.component(li, k as usize).iter().map(|c| c * &factor).collect();
                let expect = if top.iter().all(Scalar::is_zero) {
                    ExpPolySequence::zero(2)
                } else {
                    ExpPolySequence::power_term(li.clone(), 0, &top).unwrap()
                };
                prop_assert_eq!(out, expect);
            }
        }
    }
}
