//! Induced Witt-algebra modules realized on PBW monomials.
//!
//! A [`VacuumSpec`] fixes a one-dimensional module over `span{d_i | i >= r}`:
//! `d_j` acts on the vacuum by the charge `μ_j` for `r <= j <= 2r` and by zero
//! above `2r`. Inducing up gives the Borel-level module `B` with basis
//! `d_0^{e_0} ⋯ d_{r-1}^{e_{r-1}} |vac>` and the Witt-level module
//! `W = C[d_{-1}] ⊗ B`. Monomials are kept in normal order, `d_{-1}` leftmost
//! and indices ascending to the right.

use alloc::collections::BTreeMap;
use alloc::rc::Rc;
use alloc::vec;
use alloc::vec::Vec;
use core::cell::RefCell;
use core::fmt;

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::sparse::{add_into, axpy};

/// Data of a one-dimensional module over the tail subalgebra at level `r`.
#[derive(Clone, PartialEq, Eq, Debug, Hash, PartialOrd, Ord)]
pub struct VacuumSpec {
    r: u32,
    charges: Vec<Scalar>,
}

impl VacuumSpec {
    /// `charges` lists `μ_r, …, μ_{2r}`.
    pub fn new(r: u32, charges: Vec<Scalar>) -> Result<Self> {
        if charges.len() != r as usize + 1 {
            return Err(Error::ChargeCount { r, got: charges.len() });
        }
        Ok(VacuumSpec { r, charges })
    }

    /// The highest-weight (Verma) case: `r = 0`, `d_0` acts by `bprime`.
    pub fn verma(bprime: Scalar) -> Self {
        VacuumSpec {
            r: 0,
            charges: vec![bprime],
        }
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn charges(&self) -> &[Scalar] {
        &self.charges
    }

    pub fn is_highest_weight(&self) -> bool {
        self.r == 0
    }

    /// `b'` for the highest-weight case.
    pub fn highest_weight(&self) -> Option<&Scalar> {
        if self.r == 0 {
            Some(&self.charges[0])
        } else {
            None
        }
    }

    /// The scalar by which `d_j` acts on the vacuum.
    pub fn vacuum_charge(&self, j: i64) -> Result<Scalar> {
        let r = self.r as i64;
        if j < r {
            return Err(Error::NotVacuumLevel { index: j, r: self.r });
        }
        Ok(if j <= 2 * r {
            self.charges[(j - r) as usize].clone()
        } else {
            Scalar::ZERO
        })
    }

    /// Simplicity of the induced Witt module.
    ///
    /// For `r >= 1` this is `μ_{2r} != 0 or μ_{2r-1} != 0`; the highest-weight
    /// module is simple iff `b' != 0`.
    pub fn is_simple_induced(&self) -> bool {
        let top = &self.charges[self.r as usize];
        if self.r == 0 {
            return !top.is_zero();
        }
        !top.is_zero() || !self.charges[self.r as usize - 1].is_zero()
    }
}

/// Which induced module a vector lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Level {
    /// The Borel-level module `B`: no `d_{-1}` factors, acted on by `d_j, j >= 0`.
    B,
    /// The Witt-level module `W`.
    W,
}

impl Level {
    pub fn lowest_generator(self) -> i64 {
        match self {
            Level::B => 0,
            Level::W => -1,
        }
    }
}

/// `d_{-1}^{e_{-1}} d_0^{e_0} ⋯` applied to the vacuum; stores exponents from
/// index `-1` upward with trailing zeros trimmed.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct PbwMonomial {
    exps: Vec<u32>,
}

impl PbwMonomial {
    pub fn vacuum() -> Self {
        Self::default()
    }

    /// Builds from `(index, exponent)` pairs; repeated indices accumulate.
    pub fn from_pairs(pairs: &[(i64, u32)]) -> Self {
        let mut m = Self::vacuum();
        for (i, e) in pairs {
            m.raise(*i, *e);
        }
        m
    }

    /// `d_{-1}^s`.
    pub fn d_minus_one_power(s: u32) -> Self {
        Self::from_pairs(&[(-1, s)])
    }

    pub fn exponent(&self, i: i64) -> u32 {
        let slot = (i + 1) as usize;
        if i < -1 {
            0
        } else {
            self.exps.get(slot).copied().unwrap_or(0)
        }
    }

    fn raise(&mut self, i: i64, by: u32) {
        assert!(i >= -1, "PBW index below -1");
        if by == 0 {
            return;
        }
        let slot = (i + 1) as usize;
        if self.exps.len() <= slot {
            self.exps.resize(slot + 1, 0);
        }
        self.exps[slot] += by;
    }

    fn lower(&mut self, i: i64) {
        let slot = (i + 1) as usize;
        self.exps[slot] -= 1;
        while self.exps.last() == Some(&0) {
            self.exps.pop();
        }
    }

    pub fn with_raised(&self, i: i64, by: u32) -> Self {
        let mut m = self.clone();
        m.raise(i, by);
        m
    }

    /// The same monomial with its `d_{-1}` factor replaced by `d_{-1}^s`.
    pub fn with_d_minus_one_degree(&self, s: u32) -> Self {
        let mut m = self.clone();
        if m.exps.is_empty() {
            m.exps.push(0);
        }
        m.exps[0] = s;
        while m.exps.last() == Some(&0) {
            m.exps.pop();
        }
        m
    }

    /// The socle part: the monomial with the `d_{-1}` factor removed.
    pub fn socle_part(&self) -> Self {
        self.with_d_minus_one_degree(0)
    }

    pub fn d_minus_one_degree(&self) -> u32 {
        self.exponent(-1)
    }

    /// Total exponent of `d_0, …, d_{r-1}`.
    pub fn b_degree(&self) -> u32 {
        self.exps.iter().skip(1).sum()
    }

    pub fn total_degree(&self) -> u32 {
        self.exps.iter().sum()
    }

    pub fn is_vacuum(&self) -> bool {
        self.exps.is_empty()
    }

    /// Largest index with a nonzero exponent.
    pub fn max_index(&self) -> Option<i64> {
        if self.exps.is_empty() {
            None
        } else {
            Some(self.exps.len() as i64 - 2)
        }
    }

    fn lowest_index(&self) -> Option<i64> {
        self.exps.iter().position(|e| *e > 0).map(|p| p as i64 - 1)
    }

    /// `(index, exponent)` pairs in normal order.
    pub fn factors(&self) -> impl Iterator<Item = (i64, u32)> + '_ {
        self.exps
            .iter()
            .enumerate()
            .filter(|(_, e)| **e > 0)
            .map(|(p, e)| (p as i64 - 1, *e))
    }

    /// Checks every index is a PBW generator at the given level.
    pub fn check_generators(&self, r: u32, level: Level) -> Result<()> {
        for (i, _) in self.factors() {
            if i < level.lowest_generator() || i >= r as i64 {
                return Err(Error::NotPbwGenerator { index: i });
            }
        }
        Ok(())
    }
}

impl fmt::Display for PbwMonomial {
    /// `d(-1)^2*d(0)|vac>`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, e) in self.factors() {
            if !first {
                f.write_str("*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "d({})", i)?;
            } else {
                write!(f, "d({})^{}", i, e)?;
            }
        }
        f.write_str("|vac>")
    }
}

impl fmt::Debug for PbwMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

pub type Terms = BTreeMap<PbwMonomial, Scalar>;

/// A vector of `B` or `W` in the PBW basis.
#[derive(Clone, PartialEq, Eq)]
pub struct ModuleElement {
    terms: Terms,
    level: Level,
}

impl ModuleElement {
    pub fn zero(level: Level) -> Self {
        ModuleElement {
            terms: Terms::new(),
            level,
        }
    }

    pub fn vacuum(level: Level) -> Self {
        Self::monomial(level, PbwMonomial::vacuum(), Scalar::ONE)
    }

    /// Panics when a Borel-level monomial carries a `d_{-1}` factor.
    pub fn monomial(level: Level, m: PbwMonomial, c: Scalar) -> Self {
        assert!(
            level == Level::W || m.d_minus_one_degree() == 0,
            "d_(-1) in a Borel-level monomial"
        );
        let mut terms = Terms::new();
        add_into(&mut terms, &m, &c);
        ModuleElement { terms, level }
    }

    pub fn from_terms(level: Level, terms: Terms) -> Self {
        let mut out = Self::zero(level);
        for (m, c) in terms {
            out.add_term(&m, &c);
        }
        out
    }

    pub fn add_term(&mut self, m: &PbwMonomial, c: &Scalar) {
        assert!(
            self.level == Level::W || m.d_minus_one_degree() == 0,
            "d_(-1) in a Borel-level monomial"
        );
        add_into(&mut self.terms, m, c);
    }

    pub fn level(&self) -> Level {
        self.level
    }

    /// Reinterprets a Borel-level vector inside `W`.
    pub fn to_w_level(&self) -> Self {
        ModuleElement {
            terms: self.terms.clone(),
            level: Level::W,
        }
    }

    pub fn terms(&self) -> &Terms {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &PbwMonomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or(Scalar::ZERO)
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        let mut out = Self::zero(self.level);
        axpy(&mut out.terms, c, &self.terms);
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        let level = self.level.max(other.level);
        let mut terms = self.terms.clone();
        axpy(&mut terms, &Scalar::ONE, &other.terms);
        ModuleElement { terms, level }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-Scalar::ONE))
    }

    /// Largest `d_{-1}` exponent present (0 for the zero vector).
    pub fn d_minus_one_degree(&self) -> u32 {
        self.terms.keys().map(|m| m.d_minus_one_degree()).max().unwrap_or(0)
    }
}

impl fmt::Debug for ModuleElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (m, c) in &self.terms {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            write!(f, "{}*{}", c, m)?;
        }
        Ok(())
    }
}

/// Memoizing rewriting engine for one vacuum.
///
/// `d_j d_i = d_i d_j + (i - j) d_{i+j}` moves the applied generator rightward
/// until it is absorbed in normal order or reaches the vacuum. Each step
/// recurses on a strictly shorter word, so rewriting terminates.
pub struct PbwEngine {
    spec: VacuumSpec,
    cache: RefCell<BTreeMap<(i64, PbwMonomial), Rc<Terms>>>,
}

impl PbwEngine {
    pub fn new(spec: VacuumSpec) -> Self {
        PbwEngine {
            spec,
            cache: RefCell::new(BTreeMap::new()),
        }
    }

    pub fn spec(&self) -> &VacuumSpec {
        &self.spec
    }

    /// `d_j` applied to one normal-ordered monomial, `j >= -1`.
    pub fn act_monomial(&self, j: i64, m: &PbwMonomial) -> Rc<Terms> {
        debug_assert!(j >= -1);
        let key = (j, m.clone());
        if let Some(hit) = self.cache.borrow().get(&key) {
            return Rc::clone(hit);
        }
        let out = Rc::new(self.rewrite(j, m));
        self.cache.borrow_mut().insert(key, Rc::clone(&out));
        out
    }

    fn rewrite(&self, j: i64, m: &PbwMonomial) -> Terms {
        let r = self.spec.r as i64;
        let mut out = Terms::new();
        let g = match m.lowest_index() {
            None => {
                if j < r {
                    out.insert(PbwMonomial::vacuum().with_raised(j, 1), Scalar::ONE);
                } else {
                    let c = self.spec.vacuum_charge(j).expect("j >= r");
                    add_into(&mut out, &PbwMonomial::vacuum(), &c);
                }
                return out;
            }
            Some(g) => g,
        };
        if j <= g {
            out.insert(m.with_raised(j, 1), Scalar::ONE);
            return out;
        }
        // d_j d_g rest = d_g (d_j rest) + (g - j) d_{j+g} rest
        let mut rest = m.clone();
        rest.lower(g);
        for (mono, c) in self.act_monomial(j, &rest).iter() {
            // every index of `mono` is >= g, so prepending d_g stays normal
            add_into(&mut out, &mono.with_raised(g, 1), c);
        }
        let coeff = Scalar::from_int(g - j);
        axpy(&mut out, &coeff, &self.act_monomial(j + g, &rest));
        out
    }

    /// `d_j · v`.
    pub fn act(&self, j: i64, v: &ModuleElement) -> Result<ModuleElement> {
        let lo = v.level.lowest_generator();
        if j < lo {
            return Err(Error::IndexBelowLevel { index: j, lo });
        }
        let mut out = ModuleElement::zero(v.level);
        for (m, c) in &v.terms {
            axpy(&mut out.terms, c, &self.act_monomial(j, m));
        }
        Ok(out)
    }

    /// An index `N` with `d_j v = 0` for every `j >= N`.
    pub fn annihilation_bound(&self, v: &ModuleElement) -> i64 {
        2 * self.spec.r as i64 + v.d_minus_one_degree() as i64 + 1
    }

    /// The least `R >= 0` with `d_{R+i} v = 0` for all `i >= 1`.
    pub fn ord(&self, v: &ModuleElement) -> Result<u32> {
        if v.is_zero() {
            return Err(Error::OrderOfZero);
        }
        let top = self.annihilation_bound(v) - 1;
        for idx in (1..=top).rev() {
            if !self.act(idx, v)?.is_zero() {
                return Ok(idx as u32);
            }
        }
        Ok(0)
    }
}

/// `μ_j`; see [`VacuumSpec::vacuum_charge`].
pub fn vacuum_charge(spec: &VacuumSpec, j: i64) -> Result<Scalar> {
    spec.vacuum_charge(j)
}

/// `d_j · v` without a shared cache.
pub fn act(spec: &VacuumSpec, j: i64, v: &ModuleElement) -> Result<ModuleElement> {
    PbwEngine::new(spec.clone()).act(j, v)
}

pub fn ord(spec: &VacuumSpec, v: &ModuleElement) -> Result<u32> {
    PbwEngine::new(spec.clone()).ord(v)
}

/// Socle membership in `W`: no monomial carries a `d_{-1}` factor.
pub fn is_in_socle(v: &ModuleElement) -> bool {
    v.terms.keys().all(|m| m.d_minus_one_degree() == 0)
}

pub fn is_simple_induced(spec: &VacuumSpec) -> bool {
    spec.is_simple_induced()
}

/// All Borel-level monomials over `d_0, …, d_{r-1}` with total degree `<= max_degree`.
pub fn borel_monomials(r: u32, max_degree: u32) -> Vec<PbwMonomial> {
    let mut out = vec![PbwMonomial::vacuum()];
    for i in 0..r as i64 {
        let mut next = Vec::new();
        for m in &out {
            let used = m.b_degree();
            for e in 0..=(max_degree - used) {
                next.push(m.with_raised(i, e));
            }
        }
        out = next;
    }
    out.sort();
    out
}

/// All Witt-level monomials with `d_{-1}` exponent `<= dmax` and Borel degree `<= bmax`.
pub fn witt_monomials(r: u32, dmax: u32, bmax: u32) -> Vec<PbwMonomial> {
    let mut out = Vec::new();
    for b in borel_monomials(r, bmax) {
        for s in 0..=dmax {
            out.push(b.with_d_minus_one_degree(s));
        }
    }
    out.sort();
    out
}
