//! Text forms of scalars, elements, module descriptors and truncation profiles.
//!
//! Scalars are exact literals only: `p/q`, `(p/q)+(r/s)i`, `p/q+r/s*i`.
//! Elements follow
//!
//! ```text
//! element  := term (('+'|'-') term)*
//! term     := scalar '*'? monomial '|vac>' ('(x)' 't^' int)?
//! monomial := ('d(' int ')' ('^' nat)? '*'?)*
//! ```
//!
//! Inside a term a complex coefficient is parenthesized, so `+` and `-`
//! always separate terms.

use std::fmt::Write as _;

use thiserror::Error;
use virmod_core::cm_compat::EParams;
use virmod_core::loopmod::{LParams, LoopElement, NParams, WModule};
use virmod_core::pbw::{Level, ModuleElement, PbwMonomial, VacuumSpec};
use virmod_core::structure::{ModuleDescriptor, ParityParams, TruncationProfile};
use virmod_core::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("at {pos}: {msg}")]
pub struct ParseError {
    pub pos: usize,
    pub msg: String,
}

type PResult<T> = Result<T, ParseError>;

struct Cursor<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(src: &'a str) -> Self {
        Cursor { src, pos: 0 }
    }

    fn err<T>(&self, msg: impl Into<String>) -> PResult<T> {
        Err(ParseError {
            pos: self.pos,
            msg: msg.into(),
        })
    }

    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.src.len() - trimmed.len();
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.rest().chars().next()
    }

    fn eat(&mut self, lit: &str) -> bool {
        self.skip_ws();
        if self.rest().starts_with(lit) {
            self.pos += lit.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, lit: &str) -> PResult<()> {
        if self.eat(lit) {
            Ok(())
        } else {
            self.err(format!("expected `{lit}`"))
        }
    }

    fn at_end(&mut self) -> bool {
        self.skip_ws();
        self.pos == self.src.len()
    }

    fn finish(&mut self) -> PResult<()> {
        if self.at_end() {
            Ok(())
        } else {
            self.err("unexpected trailing input")
        }
    }

    fn digits(&mut self) -> PResult<u64> {
        self.skip_ws();
        let len = self.rest().bytes().take_while(u8::is_ascii_digit).count();
        if len == 0 {
            return self.err("expected digits");
        }
        let text = &self.rest()[..len];
        match text.parse::<u64>() {
            Ok(v) if v <= i64::MAX as u64 => {
                self.pos += len;
                Ok(v)
            }
            _ => self.err("integer out of range"),
        }
    }

    fn int(&mut self) -> PResult<i64> {
        let neg = self.eat("-");
        if !neg {
            self.eat("+");
        }
        let v = self.digits()? as i64;
        Ok(if neg { -v } else { v })
    }

    fn nat(&mut self) -> PResult<u32> {
        let start = self.pos;
        let v = self.digits()?;
        u32::try_from(v).map_err(|_| ParseError {
            pos: start,
            msg: "exponent out of range".into(),
        })
    }

    fn ident(&mut self) -> &'a str {
        self.skip_ws();
        let len = self
            .rest()
            .bytes()
            .take_while(|b| b.is_ascii_alphanumeric() || *b == b'_')
            .count();
        let s = &self.rest()[..len];
        self.pos += len;
        s
    }

    // p or p/q, or a parenthesized sum
    fn atom(&mut self) -> PResult<Scalar> {
        if self.eat("(") {
            let v = self.sum()?;
            self.expect(")")?;
            return Ok(v);
        }
        let num = self.digits()? as i64;
        if self.eat("/") {
            let at = self.pos;
            let den = self.digits()? as i64;
            if den == 0 {
                return Err(ParseError {
                    pos: at,
                    msg: "zero denominator".into(),
                });
            }
            return Ok(Scalar::ratio(num, den));
        }
        Ok(Scalar::from_int(num))
    }

    // an atom with an optional imaginary unit, or a bare `i`
    fn part(&mut self) -> PResult<Scalar> {
        if self.imag_unit() {
            return Ok(Scalar::i());
        }
        let v = self.atom()?;
        let save = self.pos;
        if self.eat("*") && self.imag_unit() {
            return Ok(&v * &Scalar::i());
        }
        self.pos = save;
        if self.imag_unit() {
            return Ok(&v * &Scalar::i());
        }
        Ok(v)
    }

    fn imag_unit(&mut self) -> bool {
        self.skip_ws();
        let mut chars = self.rest().chars();
        if chars.next() == Some('i') && !chars.next().is_some_and(|c| c.is_ascii_alphanumeric()) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn sum(&mut self) -> PResult<Scalar> {
        let mut neg = self.eat("-");
        if !neg {
            self.eat("+");
        }
        let mut acc = Scalar::ZERO;
        loop {
            let v = self.part()?;
            acc = if neg { &acc - &v } else { &acc + &v };
            if self.eat("+") {
                neg = false;
            } else if self.eat("-") {
                neg = true;
            } else {
                return Ok(acc);
            }
        }
    }
}

pub fn parse_scalar(text: &str) -> PResult<Scalar> {
    let mut c = Cursor::new(text);
    let v = c.sum()?;
    c.finish()?;
    Ok(v)
}

/// `p/q` for reals, `(p/q)+(r/s)i` otherwise.
pub fn render_scalar(c: &Scalar) -> String {
    c.to_string()
}

/// A parsed element: a loop-module vector, or a vector of `W` when no term
/// carries a `t^n` factor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ParsedElement {
    Loop(LoopElement),
    Vector(ModuleElement),
}

impl ParsedElement {
    /// The loop vector, reading a plain vector as sitting at `t^0`.
    pub fn into_loop(self) -> LoopElement {
        match self {
            ParsedElement::Loop(v) => v,
            ParsedElement::Vector(w) => LoopElement::from_vector(&w, 0),
        }
    }
}

fn monomial(c: &mut Cursor, r: Option<u32>) -> PResult<PbwMonomial> {
    let mut m = PbwMonomial::vacuum();
    let mut last: Option<i64> = None;
    loop {
        let start = {
            c.skip_ws();
            c.pos
        };
        if !c.eat("d(") {
            break;
        }
        let i = c.int()?;
        c.expect(")")?;
        let e = if c.eat("^") { c.nat()? } else { 1 };
        let bad_index = i < -1 || r.is_some_and(|r| i >= r as i64);
        if bad_index {
            return Err(ParseError {
                pos: start,
                msg: virmod_core::Error::NotPbwGenerator { index: i }.to_string(),
            });
        }
        if last.is_some_and(|l| l > i) {
            return Err(ParseError {
                pos: start,
                msg: "factors must be in normal order (ascending indices)".into(),
            });
        }
        last = Some(i);
        m = m.with_raised(i, e);
        let save = c.pos;
        if !(c.eat("*") && c.rest().trim_start().starts_with("d(")) {
            c.pos = save;
        }
    }
    c.expect("|vac>")?;
    Ok(m)
}

// coefficient of a term; `None` when the term starts with the monomial
fn term_scalar(c: &mut Cursor) -> PResult<Option<Scalar>> {
    match c.peek() {
        Some('d') | Some('|') => Ok(None),
        _ => {
            let v = c.part()?;
            c.eat("*");
            Ok(Some(v))
        }
    }
}

/// Parses an element. With `r` given, monomials must use PBW generators of
/// the induced module of base level `r`, that is `d(-1), …, d(r-1)`.
pub fn parse_element(text: &str, r: Option<u32>) -> PResult<ParsedElement> {
    let mut c = Cursor::new(text);
    if text.trim() == "0" {
        return Ok(ParsedElement::Loop(LoopElement::zero()));
    }
    let mut loop_terms = LoopElement::zero();
    let mut plain = ModuleElement::zero(Level::W);
    let mut kinds = (false, false);
    let mut neg = c.eat("-");
    if !neg {
        c.eat("+");
    }
    loop {
        let coef = term_scalar(&mut c)?.unwrap_or(Scalar::ONE);
        let coef = if neg { -coef } else { coef };
        let m = monomial(&mut c, r)?;
        if c.eat("(x)") {
            c.expect("t^")?;
            let n = c.int()?;
            loop_terms.add_term(&(n, m), &coef);
            kinds.0 = true;
        } else {
            plain.add_term(&m, &coef);
            kinds.1 = true;
        }
        if c.eat("+") {
            neg = false;
        } else if c.eat("-") {
            neg = true;
        } else {
            break;
        }
    }
    c.finish()?;
    match kinds {
        (true, true) => Err(ParseError {
            pos: 0,
            msg: "terms mix loop vectors and plain vectors".into(),
        }),
        (false, _) => Ok(ParsedElement::Vector(plain)),
        (true, false) => Ok(ParsedElement::Loop(loop_terms)),
    }
}

fn render_terms<'a>(terms: impl Iterator<Item = (String, &'a Scalar)>) -> String {
    let mut out = String::new();
    for (body, c) in terms {
        let first = out.is_empty();
        let (neg, mag) = if c.is_real() && c.re().is_negative() {
            (true, -c.clone())
        } else {
            (false, c.clone())
        };
        match (first, neg) {
            (true, true) => out.push('-'),
            (true, false) => {}
            (false, true) => out.push_str(" - "),
            (false, false) => out.push_str(" + "),
        }
        if !mag.is_one() {
            if mag.is_real() {
                let _ = write!(out, "{mag}*");
            } else {
                let _ = write!(out, "({mag})*");
            }
        }
        out.push_str(&body);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// Canonical text of a loop vector, e.g. `3/2*d(-1)^2|vac> (x) t^-3`.
pub fn render_loop(v: &LoopElement) -> String {
    render_terms(v.terms().iter().map(|((n, m), c)| (format!("{m} (x) t^{n}"), c)))
}

pub fn render_vector(w: &ModuleElement) -> String {
    render_terms(w.terms().iter().map(|(m, c)| (m.to_string(), c)))
}

pub fn render_element(e: &ParsedElement) -> String {
    match e {
        ParsedElement::Loop(v) => render_loop(v),
        ParsedElement::Vector(w) => render_vector(w),
    }
}

/// A module descriptor, or the four-parameter family `E(λ, b, γ, p)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Descriptor {
    Module(ModuleDescriptor),
    E(EParams),
}

impl Descriptor {
    /// Base level of the Witt module, when the descriptor has one.
    pub fn base_level(&self) -> Option<u32> {
        match self {
            Descriptor::Module(ModuleDescriptor::L(p)) => Some(p.spec().map_or(0, VacuumSpec::r)),
            Descriptor::Module(ModuleDescriptor::N(p)) => Some(p.spec.r()),
            Descriptor::Module(ModuleDescriptor::A { .. }) => Some(0),
            Descriptor::Module(ModuleDescriptor::Parity(_)) | Descriptor::E(_) => Some(0),
        }
    }

    /// `E(λ, b, γ, p)` is realized as `L(Verma(-γ), λ, b, γ + p)`.
    pub fn to_module(&self) -> ModuleDescriptor {
        match self {
            Descriptor::Module(m) => m.clone(),
            Descriptor::E(e) => ModuleDescriptor::L(
                LParams::induced(
                    VacuumSpec::verma(e.bprime()),
                    e.lambda().clone(),
                    e.b.clone(),
                    e.twist(),
                )
                .expect("λ != 0"),
            ),
        }
    }
}

fn core_err(c: &Cursor, e: virmod_core::Error) -> ParseError {
    ParseError {
        pos: c.pos,
        msg: e.to_string(),
    }
}

fn witt_module(c: &mut Cursor) -> PResult<WModule> {
    if c.eat("triv") {
        return Ok(WModule::Trivial);
    }
    c.expect("vac(")?;
    c.expect("r")?;
    c.expect("=")?;
    let r = c.nat()?;
    c.expect(";")?;
    let mut charges = vec![c.sum()?];
    while c.eat(",") {
        charges.push(c.sum()?);
    }
    c.expect(")")?;
    VacuumSpec::new(r, charges)
        .map(WModule::Induced)
        .map_err(|e| core_err(c, e))
}

// `name=value` fields separated by `;`, each name exactly once
fn fields(c: &mut Cursor, names: &[&str], leading_sep: bool) -> PResult<Vec<Scalar>> {
    let mut vals: Vec<Option<Scalar>> = vec![None; names.len()];
    for k in 0..names.len() {
        if k > 0 || leading_sep {
            c.expect(";")?;
        }
        let at = {
            c.skip_ws();
            c.pos
        };
        let name = c.ident();
        let Some(slot) = names.iter().position(|n| *n == name) else {
            return Err(ParseError {
                pos: at,
                msg: format!("unknown field `{name}`, expected one of {}", names.join(", ")),
            });
        };
        if vals[slot].is_some() {
            return Err(ParseError {
                pos: at,
                msg: format!("field `{name}` given twice"),
            });
        }
        c.expect("=")?;
        vals[slot] = Some(c.sum()?);
    }
    c.expect(")")?;
    Ok(vals.into_iter().map(|v| v.expect("all fields set")).collect())
}

/// Parses `L(vac(r=0;1); lambda=2; a=0; b=0)`, `N(vac(..); a=..; twist=..)`,
/// `A(a=..; b=..)`, `Parity(index=0; a=..; bprime=..)` or
/// `E(lambda=..; b=..; gamma=..; p=..)`. `triv` stands for the trivial `W`.
pub fn parse_descriptor(text: &str) -> PResult<Descriptor> {
    let mut c = Cursor::new(text);
    let head = c.ident();
    c.expect("(")?;
    let d = match head {
        "L" => {
            let w = witt_module(&mut c)?;
            let v = fields(&mut c, &["lambda", "a", "b"], true)?;
            let [lam, a, b] = <[Scalar; 3]>::try_from(v).expect("three fields");
            Descriptor::Module(ModuleDescriptor::L(
                LParams::new(w, lam, a, b).map_err(|e| core_err(&c, e))?,
            ))
        }
        "N" => {
            let WModule::Induced(spec) = witt_module(&mut c)? else {
                return c.err("N needs an induced module `vac(..)`");
            };
            let v = fields(&mut c, &["a", "twist"], true)?;
            let [a, twist] = <[Scalar; 2]>::try_from(v).expect("two fields");
            Descriptor::Module(ModuleDescriptor::N(NParams { spec, a, twist }))
        }
        "A" => {
            let v = fields(&mut c, &["a", "b"], false)?;
            let [a, b] = <[Scalar; 2]>::try_from(v).expect("two fields");
            Descriptor::Module(ModuleDescriptor::A { a, b })
        }
        "Parity" => {
            let v = fields(&mut c, &["index", "a", "bprime"], false)?;
            let [index, a, bprime] = <[Scalar; 3]>::try_from(v).expect("three fields");
            let index = match index.as_integer() {
                Some(i @ 0..=1) => i as u8,
                _ => return c.err("parity index is 0 or 1"),
            };
            let p = ParityParams::new(index, a, bprime).map_err(|e| core_err(&c, e))?;
            Descriptor::Module(ModuleDescriptor::Parity(p))
        }
        "E" => {
            let v = fields(&mut c, &["lambda", "b", "gamma", "p"], false)?;
            let [lam, b, g, p] = <[Scalar; 4]>::try_from(v).expect("four fields");
            Descriptor::E(EParams::new(lam, b, g, p).map_err(|e| core_err(&c, e))?)
        }
        other => {
            return Err(ParseError {
                pos: 0,
                msg: format!("unknown module family `{other}`"),
            })
        }
    };
    c.finish()?;
    Ok(d)
}

/// `vac(r=1;0,1)`: the base level, then the charges `μ_r, …, μ_{2r}`.
pub fn render_spec(spec: &VacuumSpec) -> String {
    let charges: Vec<String> = spec.charges().iter().map(render_scalar).collect();
    format!("vac(r={};{})", spec.r(), charges.join(","))
}

fn render_w(w: &WModule) -> String {
    match w {
        WModule::Trivial => "triv".into(),
        WModule::Induced(spec) => render_spec(spec),
    }
}

pub fn render_module(d: &ModuleDescriptor) -> String {
    let s = render_scalar;
    match d {
        ModuleDescriptor::L(p) => format!(
            "L({}; lambda={}; a={}; b={})",
            render_w(p.w()),
            s(p.lambda()),
            s(p.a()),
            s(p.b())
        ),
        ModuleDescriptor::N(p) => format!(
            "N({}; a={}; twist={})",
            render_w(&WModule::Induced(p.spec.clone())),
            s(&p.a),
            s(&p.twist)
        ),
        ModuleDescriptor::A { a, b } => format!("A(a={}; b={})", s(a), s(b)),
        ModuleDescriptor::Parity(p) => {
            format!("Parity(index={}; a={}; bprime={})", p.index(), s(p.a()), s(p.bprime()))
        }
    }
}

pub fn render_descriptor(d: &Descriptor) -> String {
    match d {
        Descriptor::Module(m) => render_module(m),
        Descriptor::E(e) => format!(
            "E(lambda={}; b={}; gamma={}; p={})",
            render_scalar(e.lambda()),
            render_scalar(&e.b),
            render_scalar(&e.gamma),
            render_scalar(&e.p)
        ),
    }
}

/// Parses `dmax=2,bmax=2,win=3,fuel=4,kmax=3`. `win=w` means `-w..w`;
/// `win=lo..hi` is also accepted. Missing keys keep their defaults.
pub fn parse_profile(text: &str) -> PResult<TruncationProfile> {
    let mut p = TruncationProfile::default();
    let mut c = Cursor::new(text);
    if c.at_end() {
        return Ok(p);
    }
    loop {
        let at = {
            c.skip_ws();
            c.pos
        };
        let key = c.ident();
        c.expect("=")?;
        match key {
            "dmax" => p.dmax = c.nat()?,
            "bmax" => p.bmax = c.nat()?,
            "fuel" => p.fuel = c.nat()?,
            "kmax" => p.kmax = c.nat()?,
            "win" => {
                let lo = c.int()?;
                p.window = if c.eat("..") {
                    (lo, c.int()?)
                } else if lo >= 0 {
                    (-lo, lo)
                } else {
                    return c.err("symmetric window needs a nonnegative width");
                };
                if p.window.0 > p.window.1 {
                    return c.err("empty window");
                }
            }
            other => {
                return Err(ParseError {
                    pos: at,
                    msg: format!("unknown profile key `{other}`"),
                })
            }
        }
        if !c.eat(",") {
            break;
        }
    }
    c.finish()?;
    Ok(p)
}

pub fn render_profile(p: &TruncationProfile) -> String {
    let win = if p.window.0 == -p.window.1 {
        p.window.1.to_string()
    } else {
        format!("{}..{}", p.window.0, p.window.1)
    };
    format!(
        "dmax={},bmax={},win={},fuel={},kmax={}",
        p.dmax, p.bmax, win, p.fuel, p.kmax
    )
}
