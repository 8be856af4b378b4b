//! Ordinals below ε₀ in Cantor normal form, plus an optional abstract limit
//! atom `Λ` that stands for a large limit ordinal of declared cofinality.
//!
//! Only the arithmetic the hierarchy translation needs is defined on
//! `Λ`-headed values: adding naturals, parity, halving and doubling.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OrdinalError {
    #[error("unsupported symbolic operation: {0}")]
    UnsupportedSymbolic(String),
    #[error("ordinal {0} is odd")]
    OddOrdinal(String),
    #[error("coefficient overflow")]
    Overflow,
    #[error("parse error at column {column}: {message}")]
    Parse { column: usize, message: String },
}

/// Cofinality tag. No order is imposed between the symbolic tags.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CofClass {
    Finite,
    Omega,
    CofKappa,
    OtherLtKappa,
    Kappa,
}

impl CofClass {
    pub fn is_omega(self) -> bool {
        self == CofClass::Omega
    }

    pub fn is_kappa(self) -> bool {
        self == CofClass::Kappa
    }

    pub fn name(self) -> &'static str {
        match self {
            CofClass::Finite => "finite",
            CofClass::Omega => "omega",
            CofClass::CofKappa => "cof_kappa",
            CofClass::OtherLtKappa => "other_lt_kappa",
            CofClass::Kappa => "kappa",
        }
    }

    /// Short atom name used inside `L(...)`.
    pub fn atom_name(self) -> &'static str {
        match self {
            CofClass::Finite => "finite",
            CofClass::Omega => "omega",
            CofClass::CofKappa => "cofk",
            CofClass::OtherLtKappa => "oltk",
            CofClass::Kappa => "kappa",
        }
    }

    pub fn parse(s: &str) -> Option<CofClass> {
        Some(match s {
            "finite" => CofClass::Finite,
            "omega" | "w" => CofClass::Omega,
            "cof_kappa" | "cofk" => CofClass::CofKappa,
            "other_lt_kappa" | "oltk" => CofClass::OtherLtKappa,
            "kappa" | "k" => CofClass::Kappa,
            _ => return None,
        })
    }
}

impl fmt::Display for CofClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Result of [`ord_cmp`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum OrdCmp {
    Lt,
    Eq,
    Gt,
    Incomparable,
}

impl OrdCmp {
    pub fn from_ordering(o: Ordering) -> OrdCmp {
        match o {
            Ordering::Less => OrdCmp::Lt,
            Ordering::Equal => OrdCmp::Eq,
            Ordering::Greater => OrdCmp::Gt,
        }
    }

    pub fn ordering(self) -> Option<Ordering> {
        match self {
            OrdCmp::Lt => Some(Ordering::Less),
            OrdCmp::Eq => Some(Ordering::Equal),
            OrdCmp::Gt => Some(Ordering::Greater),
            OrdCmp::Incomparable => None,
        }
    }
}

/// One CNF summand `ω^exp · coef`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Term {
    pub exp: Ordinal,
    pub coef: u64,
}

/// `Λ + ω^e₁·c₁ + … + ω^eₖ·cₖ`; with `head` present the sum is `Λ + n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Ordinal {
    head: Option<CofClass>,
    terms: Vec<Term>,
}

impl Ordinal {
    pub fn zero() -> Ordinal {
        Ordinal::default()
    }

    pub fn nat(n: u64) -> Ordinal {
        if n == 0 {
            return Ordinal::zero();
        }
        Ordinal { head: None, terms: vec![Term { exp: Ordinal::zero(), coef: n }] }
    }

    pub fn omega() -> Ordinal {
        Ordinal::omega_pow(Ordinal::nat(1), 1)
    }

    /// `ω^exp · coef`. Panics if `exp` carries a `Λ` head.
    pub fn omega_pow(exp: Ordinal, coef: u64) -> Ordinal {
        assert!(exp.head.is_none(), "exponents must be pure CNF");
        if coef == 0 {
            return Ordinal::zero();
        }
        Ordinal { head: None, terms: vec![Term { exp, coef }] }
    }

    /// The abstract limit atom `Λ` with the given cofinality.
    pub fn lambda(cof: CofClass) -> Ordinal {
        assert!(cof != CofClass::Finite, "a limit atom cannot have finite cofinality");
        Ordinal { head: Some(cof), terms: Vec::new() }
    }

    /// Builds from raw parts, validating normal form.
    pub fn from_terms(head: Option<CofClass>, terms: Vec<Term>) -> Result<Ordinal, OrdinalError> {
        let o = Ordinal { head, terms };
        if o.is_normal() {
            Ok(o)
        } else {
            Err(OrdinalError::UnsupportedSymbolic(format!("not in normal form: {:?}", o)))
        }
    }

    pub fn head(&self) -> Option<CofClass> {
        self.head
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.head.is_none() && self.terms.is_empty()
    }

    pub fn is_pure(&self) -> bool {
        self.head.is_none()
    }

    pub fn as_nat(&self) -> Option<u64> {
        if self.head.is_some() {
            return None;
        }
        match self.terms.as_slice() {
            [] => Some(0),
            [t] if t.exp.is_zero() => Some(t.coef),
            _ => None,
        }
    }

    pub fn is_finite(&self) -> bool {
        self.as_nat().is_some()
    }

    /// Finite tail `n` of the decomposition `γ + n`.
    pub fn tail(&self) -> u64 {
        match self.terms.last() {
            Some(t) if t.exp.is_zero() => t.coef,
            _ => 0,
        }
    }

    /// Limit-or-zero part `γ` of `γ + n`.
    pub fn limit_part(&self) -> Ordinal {
        let mut o = self.clone();
        if matches!(o.terms.last(), Some(t) if t.exp.is_zero()) {
            o.terms.pop();
        }
        o
    }

    fn with_tail(&self, n: u64) -> Ordinal {
        let mut o = self.limit_part();
        if n > 0 {
            o.terms.push(Term { exp: Ordinal::zero(), coef: n });
        }
        o
    }

    pub fn is_successor(&self) -> bool {
        self.tail() > 0
    }

    pub fn is_limit(&self) -> bool {
        !self.is_zero() && self.tail() == 0
    }

    pub fn is_even(&self) -> bool {
        self.tail() % 2 == 0
    }

    pub fn succ(&self) -> Ordinal {
        self.with_tail(self.tail() + 1)
    }

    /// Predecessor of a successor ordinal.
    pub fn pred(&self) -> Option<Ordinal> {
        let n = self.tail();
        (n > 0).then(|| self.with_tail(n - 1))
    }

    /// Checks every structural invariant of the representation.
    pub fn is_normal(&self) -> bool {
        for w in self.terms.windows(2) {
            if ord_cmp(&w[0].exp, &w[1].exp) != OrdCmp::Gt {
                return false;
            }
        }
        for t in &self.terms {
            if t.coef == 0 || t.exp.head.is_some() || !t.exp.is_normal() {
                return false;
            }
        }
        if self.head.is_some() {
            if self.head == Some(CofClass::Finite) {
                return false;
            }
            if self.terms.iter().any(|t| !t.exp.is_zero()) {
                return false;
            }
        }
        true
    }
}

/// Ordinal sum `a + b`.
pub fn ord_add(a: &Ordinal, b: &Ordinal) -> Result<Ordinal, OrdinalError> {
    if b.is_zero() {
        return Ok(a.clone());
    }
    if b.head.is_some() {
        if a.is_finite() {
            return Ok(b.clone());
        }
        return Err(OrdinalError::UnsupportedSymbolic(format!("{} + {}", a, b)));
    }
    if a.head.is_some() && !b.is_finite() {
        return Err(OrdinalError::UnsupportedSymbolic(format!("{} + {}", a, b)));
    }
    let lead = &b.terms[0];
    let mut terms: Vec<Term> = Vec::with_capacity(a.terms.len() + b.terms.len());
    for t in &a.terms {
        match ord_cmp(&t.exp, &lead.exp) {
            OrdCmp::Gt => terms.push(t.clone()),
            OrdCmp::Eq => {
                let coef = t.coef.checked_add(lead.coef).ok_or(OrdinalError::Overflow)?;
                terms.push(Term { exp: t.exp.clone(), coef });
                terms.extend(b.terms[1..].iter().cloned());
                return Ok(Ordinal { head: a.head, terms });
            }
            _ => break,
        }
    }
    terms.extend(b.terms.iter().cloned());
    Ok(Ordinal { head: a.head, terms })
}

/// `2·a`: the finite tail doubles, the limit part is absorbed.
pub fn ord_double(a: &Ordinal) -> Ordinal {
    a.with_tail(a.tail() * 2)
}

/// `a/2 = γ + n/2` for even `a = γ + n`.
pub fn ord_half(a: &Ordinal) -> Result<Ordinal, OrdinalError> {
    if !a.is_even() {
        return Err(OrdinalError::OddOrdinal(a.to_string()));
    }
    Ok(a.with_tail(a.tail() / 2))
}

/// Cofinality class of `a ≥ 1`. Successors report `Finite`; zero does too.
pub fn ord_cof(a: &Ordinal) -> CofClass {
    if a.is_zero() || a.is_successor() {
        return CofClass::Finite;
    }
    match a.head {
        Some(c) if a.terms.is_empty() => c,
        _ => CofClass::Omega,
    }
}

pub fn ord_cmp(a: &Ordinal, b: &Ordinal) -> OrdCmp {
    match (a.head, b.head) {
        (Some(x), Some(y)) if x != y => return OrdCmp::Incomparable,
        (Some(_), None) => return OrdCmp::Gt,
        (None, Some(_)) => return OrdCmp::Lt,
        _ => {}
    }
    for (s, t) in a.terms.iter().zip(&b.terms) {
        match ord_cmp(&s.exp, &t.exp) {
            OrdCmp::Eq => {}
            other => return other,
        }
        if s.coef != t.coef {
            return OrdCmp::from_ordering(s.coef.cmp(&t.coef));
        }
    }
    OrdCmp::from_ordering(a.terms.len().cmp(&b.terms.len()))
}

/// `a · c` for a natural `c`, pure CNF only.
pub fn ord_mul_nat(a: &Ordinal, c: u64) -> Result<Ordinal, OrdinalError> {
    if c == 0 || a.is_zero() {
        return Ok(Ordinal::zero());
    }
    if a.head.is_some() {
        if c == 1 {
            return Ok(a.clone());
        }
        return Err(OrdinalError::UnsupportedSymbolic(format!("{} * {}", a, c)));
    }
    let mut o = a.clone();
    let lead = &mut o.terms[0];
    lead.coef = lead.coef.checked_mul(c).ok_or(OrdinalError::Overflow)?;
    Ok(o)
}

/// `a · ω`, pure CNF only.
pub fn ord_mul_omega(a: &Ordinal) -> Result<Ordinal, OrdinalError> {
    if a.head.is_some() {
        return Err(OrdinalError::UnsupportedSymbolic(format!("({}) * w", a)));
    }
    match a.terms.first() {
        None => Ok(Ordinal::zero()),
        Some(t) => Ok(Ordinal::omega_pow(ord_add(&t.exp, &Ordinal::nat(1))?, 1)),
    }
}

impl PartialOrd for Ordinal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        ord_cmp(self, other).ordering()
    }
}

impl From<u64> for Ordinal {
    fn from(n: u64) -> Ordinal {
        Ordinal::nat(n)
    }
}

fn write_exp(f: &mut fmt::Formatter<'_>, exp: &Ordinal) -> fmt::Result {
    if let Some(n) = exp.as_nat() {
        write!(f, "{}", n)
    } else if *exp == Ordinal::omega() {
        f.write_str("w")
    } else {
        write!(f, "({})", exp)
    }
}

impl fmt::Display for Ordinal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        if let Some(c) = self.head {
            write!(f, "L({})", c.atom_name())?;
            first = false;
        }
        for t in &self.terms {
            if !first {
                f.write_str("+")?;
            }
            first = false;
            if t.exp.is_zero() {
                write!(f, "{}", t.coef)?;
                continue;
            }
            f.write_str("w")?;
            if t.exp != Ordinal::nat(1) {
                f.write_str("^")?;
                write_exp(f, &t.exp)?;
            }
            if t.coef > 1 {
                write!(f, "*{}", t.coef)?;
            }
        }
        Ok(())
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, message: impl Into<String>) -> Result<T, OrdinalError> {
        Err(OrdinalError::Parse { column: self.pos + 1, message: message.into() })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<(), OrdinalError> {
        if self.eat(c) {
            Ok(())
        } else {
            self.err(format!("expected '{}'", c as char))
        }
    }

    fn nat(&mut self) -> Result<u64, OrdinalError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected a natural number");
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        text.parse().map_err(|_| OrdinalError::Overflow)
    }

    fn expr(&mut self) -> Result<Ordinal, OrdinalError> {
        let mut acc = self.term()?;
        while self.eat(b'+') {
            let col = self.pos;
            let t = self.term()?;
            acc = ord_add(&acc, &t).map_err(|e| match e {
                OrdinalError::UnsupportedSymbolic(m) => {
                    OrdinalError::Parse { column: col + 1, message: format!("unsupported sum {}", m) }
                }
                other => other,
            })?;
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Ordinal, OrdinalError> {
        let mut base = self.atom()?;
        while self.eat(b'*') {
            let c = self.nat()?;
            base = ord_mul_nat(&base, c)?;
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Ordinal, OrdinalError> {
        match self.peek() {
            Some(c) if c.is_ascii_digit() => Ok(Ordinal::nat(self.nat()?)),
            Some(b'w') => {
                self.pos += 1;
                if self.eat(b'^') {
                    let col = self.pos;
                    let exp = self.exponent()?;
                    if exp.head.is_some() {
                        return Err(OrdinalError::Parse {
                            column: col + 1,
                            message: "limit atoms are not allowed in exponents".into(),
                        });
                    }
                    Ok(Ordinal::omega_pow(exp, 1))
                } else {
                    Ok(Ordinal::omega())
                }
            }
            Some(b'L') => {
                self.pos += 1;
                self.expect(b'(')?;
                self.skip_ws();
                let start = self.pos;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_alphanumeric()
                    || self.src.get(self.pos) == Some(&b'_')
                {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                let cof = match CofClass::parse(name) {
                    Some(c) if c != CofClass::Finite => c,
                    _ => {
                        self.pos = start;
                        return self.err(format!("unknown cofinality '{}'", name));
                    }
                };
                self.expect(b')')?;
                Ok(Ordinal::lambda(cof))
            }
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(b')')?;
                Ok(e)
            }
            Some(c) => self.err(format!("unexpected '{}'", c as char)),
            None => self.err("unexpected end of input"),
        }
    }

    fn exponent(&mut self) -> Result<Ordinal, OrdinalError> {
        match self.peek() {
            Some(c) if c.is_ascii_digit() => Ok(Ordinal::nat(self.nat()?)),
            Some(b'w') | Some(b'(') => self.atom(),
            _ => self.err("expected an exponent"),
        }
    }
}

pub fn parse_ordinal(s: &str) -> Result<Ordinal, OrdinalError> {
    let mut p = Parser { src: s.as_bytes(), pos: 0 };
    let o = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return p.err("trailing input");
    }
    Ok(o)
}

impl FromStr for Ordinal {
    type Err = OrdinalError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_ordinal(s)
    }
}

impl Serialize for Ordinal {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Ordinal {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        parse_ordinal(&text).map_err(serde::de::Error::custom)
    }
}
