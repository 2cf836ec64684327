//! Sparse Laurent polynomials with arbitrary-precision integer coefficients.
//!
//! Two variable families occur: the pair `{q, t}`, and for degree `n` the
//! multivariate family `{q_1, …, q_{n-1}, t_1, …, t_{n-1}}`. Every
//! polynomial carries its family; mixing families is an error.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum VarFamily {
    /// `q, t`.
    TwoParam,
    /// `q_1..q_m, t_1..t_m` with `m = n - 1`.
    Multivariate(u8),
}

impl VarFamily {
    pub fn multivariate_for_degree(n: usize) -> Self {
        VarFamily::Multivariate(n.saturating_sub(1) as u8)
    }

    pub fn arity(&self) -> usize {
        match self {
            VarFamily::TwoParam => 2,
            VarFamily::Multivariate(m) => 2 * *m as usize,
        }
    }

    fn index(&self, var: Var) -> Result<u16> {
        let bad = || {
            Error::UnsupportedSpecialization(format!("variable {var} is not in the family {self}"))
        };
        match (self, var) {
            (VarFamily::TwoParam, Var::Q) => Ok(0),
            (VarFamily::TwoParam, Var::T) => Ok(1),
            (VarFamily::Multivariate(m), Var::Qi(i)) if i >= 1 && i <= *m as usize => {
                Ok(i as u16 - 1)
            }
            (VarFamily::Multivariate(m), Var::Ti(i)) if i >= 1 && i <= *m as usize => {
                Ok(*m as u16 + i as u16 - 1)
            }
            _ => Err(bad()),
        }
    }

    fn var(&self, index: u16) -> Var {
        match self {
            VarFamily::TwoParam => {
                if index == 0 {
                    Var::Q
                } else {
                    Var::T
                }
            }
            VarFamily::Multivariate(m) => {
                let m = *m as u16;
                if index < m {
                    Var::Qi(index as usize + 1)
                } else {
                    Var::Ti((index - m) as usize + 1)
                }
            }
        }
    }

    fn is_t(&self, index: u16) -> bool {
        matches!(self.var(index), Var::T | Var::Ti(_))
    }
}

impl fmt::Display for VarFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VarFamily::TwoParam => f.write_str("{q,t}"),
            VarFamily::Multivariate(m) => write!(f, "{{q_1..q_{m},t_1..t_{m}}}"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    Q,
    T,
    /// `q_i`, 1-based.
    Qi(usize),
    /// `t_i`, 1-based.
    Ti(usize),
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Var::Q => f.write_str("q"),
            Var::T => f.write_str("t"),
            Var::Qi(i) if *i < 10 => write!(f, "q_{i}"),
            Var::Ti(i) if *i < 10 => write!(f, "t_{i}"),
            Var::Qi(i) => write!(f, "q_{{{i}}}"),
            Var::Ti(i) => write!(f, "t_{{{i}}}"),
        }
    }
}

/// Exponent vector stored sparsely as `(variable index, exponent)` pairs,
/// sorted by index, with no zero exponents.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(SmallVec<[(u16, i32); 4]>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(SmallVec::new())
    }

    fn from_pairs(mut pairs: Vec<(u16, i32)>) -> Self {
        pairs.sort_unstable_by_key(|p| p.0);
        let mut out: SmallVec<[(u16, i32); 4]> = SmallVec::new();
        for (v, e) in pairs {
            match out.last_mut() {
                Some(last) if last.0 == v => last.1 += e,
                _ => out.push((v, e)),
            }
        }
        out.retain(|p| p.1 != 0);
        Monomial(out)
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn pairs(&self) -> impl Iterator<Item = (u16, i32)> + '_ {
        self.0.iter().copied()
    }

    fn exponent_at(&self, index: u16) -> i32 {
        self.0.iter().find(|p| p.0 == index).map_or(0, |p| p.1)
    }

    pub fn total_degree(&self) -> i64 {
        self.0.iter().map(|p| i64::from(p.1)).sum()
    }

    fn mul(&self, other: &Self) -> Self {
        let (a, b) = (&self.0, &other.0);
        let mut out: SmallVec<[(u16, i32); 4]> = SmallVec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                Ordering::Equal => {
                    let e = a[i].1 + b[j].1;
                    if e != 0 {
                        out.push((a[i].0, e));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial(out)
    }

    fn map_exponents(&self, f: impl Fn(u16, i32) -> i32) -> Self {
        Monomial::from_pairs(self.0.iter().map(|&(v, e)| (v, f(v, e))).collect())
    }

    fn inverse(&self) -> Self {
        self.map_exponents(|_, e| -e)
    }

    /// Display order: ascending total degree, then larger exponents on earlier
    /// variables first.
    fn display_cmp(&self, other: &Self, arity: usize) -> Ordering {
        self.total_degree().cmp(&other.total_degree()).then_with(|| {
            for v in 0..arity as u16 {
                let c = other.exponent_at(v).cmp(&self.exponent_at(v));
                if c != Ordering::Equal {
                    return c;
                }
            }
            Ordering::Equal
        })
    }
}

/// Which parameter family an [`Assignment`] targets: `q` (or all `q_i`) or
/// `t` (or all `t_i`).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Param {
    Q,
    T,
}

/// A substitution applied by [`LaurentPoly::specialize`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Assignment {
    Zero(Param),
    One(Param),
    /// `t_i ↦ t^i`, `q_i ↦ q^i`: multivariate to two-parameter.
    Collapse,
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    family: VarFamily,
    terms: BTreeMap<Monomial, BigInt>,
}

impl LaurentPoly {
    pub fn zero(family: VarFamily) -> Self {
        Self { family, terms: BTreeMap::new() }
    }

    pub fn one(family: VarFamily) -> Self {
        Self::constant(family, 1)
    }

    pub fn constant(family: VarFamily, c: impl Into<BigInt>) -> Self {
        Self::from_term(family, Monomial::one(), c.into())
    }

    fn from_term(family: VarFamily, m: Monomial, c: BigInt) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Self { family, terms }
    }

    /// `coeff · Π var^exp`.
    pub fn monomial(family: VarFamily, exponents: &[(Var, i32)], coeff: impl Into<BigInt>) -> Result<Self> {
        let pairs = exponents
            .iter()
            .map(|&(v, e)| Ok((family.index(v)?, e)))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::from_term(family, Monomial::from_pairs(pairs), coeff.into()))
    }

    /// `q^a t^b` in the two-parameter family.
    pub fn qt(q_exp: i32, t_exp: i32) -> Self {
        Self::from_term(
            VarFamily::TwoParam,
            Monomial::from_pairs(vec![(0, q_exp), (1, t_exp)]),
            BigInt::one(),
        )
    }

    pub fn var(family: VarFamily, v: Var) -> Result<Self> {
        Self::monomial(family, &[(v, 1)], 1)
    }

    pub fn family(&self) -> VarFamily {
        self.family
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&Monomial::one()).is_some_and(|c| c.is_one())
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    /// The single term of a one-term polynomial.
    pub fn single_term(&self) -> Option<(&Monomial, &BigInt)> {
        if self.terms.len() == 1 {
            self.terms.iter().next()
        } else {
            None
        }
    }

    /// True for `c·m` with `c > 0` and every exponent of `m` nonnegative.
    pub fn is_positive_monomial(&self) -> bool {
        self.single_term()
            .is_some_and(|(m, c)| c.is_positive() && m.pairs().all(|(_, e)| e >= 0))
    }

    pub fn has_negative_exponent(&self) -> bool {
        self.terms.keys().any(|m| m.pairs().any(|(_, e)| e < 0))
    }

    /// Exponent of `v` in a monomial of this family.
    pub fn exponent_of(&self, m: &Monomial, v: Var) -> Result<i32> {
        Ok(m.exponent_at(self.family.index(v)?))
    }

    /// `Some(+1)` / `Some(-1)` when every coefficient has that sign; `None`
    /// for mixed signs. Zero is reported as `+1`.
    pub fn sign(&self) -> Option<i8> {
        let pos = self.terms.values().all(|c| c.is_positive());
        let neg = self.terms.values().all(|c| c.is_negative());
        match (pos, neg) {
            (true, _) => Some(1),
            (_, true) => Some(-1),
            _ => None,
        }
    }

    fn check_family(&self, other: &Self) -> Result<()> {
        if self.family != other.family {
            Err(Error::FamilyMismatch(self.family.to_string(), other.family.to_string()))
        } else {
            Ok(())
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        let mut out = self.clone();
        out.add_assign(other)?;
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        let mut out = self.clone();
        out.add_scaled_assign(other, &BigInt::from(-1))?;
        Ok(out)
    }

    pub fn add_assign(&mut self, other: &Self) -> Result<()> {
        self.check_family(other)?;
        for (m, c) in &other.terms {
            self.add_term(m.clone(), c.clone());
        }
        Ok(())
    }

    /// `self += k · other`.
    pub fn add_scaled_assign(&mut self, other: &Self, k: &BigInt) -> Result<()> {
        self.check_family(other)?;
        for (m, c) in &other.terms {
            self.add_term(m.clone(), c * k);
        }
        Ok(())
    }

    fn add_term(&mut self, m: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_family(other)?;
        let (small, large) = if self.terms.len() <= other.terms.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut out = Self::zero(self.family);
        for (m1, c1) in &small.terms {
            for (m2, c2) in &large.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        Ok(out)
    }

    /// `self += a · b`, the inner step of every matrix-vector product.
    pub fn add_product_assign(&mut self, a: &Self, b: &Self) -> Result<()> {
        self.check_family(a)?;
        self.check_family(b)?;
        for (m1, c1) in &a.terms {
            for (m2, c2) in &b.terms {
                self.add_term(m1.mul(m2), c1 * c2);
            }
        }
        Ok(())
    }

    pub fn scale(&self, k: impl Into<BigInt>) -> Self {
        let k = k.into();
        let mut out = Self::zero(self.family);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), c * &k);
        }
        out
    }

    pub fn pow(&self, e: u32) -> Result<Self> {
        let mut acc = Self::one(self.family);
        for _ in 0..e {
            acc = acc.try_mul(self)?;
        }
        Ok(acc)
    }

    /// `t ↦ 1/t` (and `t_i ↦ 1/t_i`); `q` untouched.
    pub fn invert_t(&self) -> Self {
        let fam = self.family;
        let mut out = Self::zero(fam);
        for (m, c) in &self.terms {
            out.add_term(m.map_exponents(|v, e| if fam.is_t(v) { -e } else { e }), c.clone());
        }
        out
    }

    /// Multiplies by a single monomial `m`.
    pub fn mul_monomial(&self, m: &Monomial) -> Self {
        Self {
            family: self.family,
            terms: self.terms.iter().map(|(k, c)| (k.mul(m), c.clone())).collect(),
        }
    }

    /// Exact division by the one-term polynomial `divisor = c·m`, succeeding
    /// only when every term stays integral with no exponent dropping below
    /// zero where it was nonnegative.
    pub fn div_monomial(&self, divisor: &Self) -> Result<Self> {
        self.check_family(divisor)?;
        let (m, c) = divisor
            .single_term()
            .ok_or_else(|| Error::NotDivisible(divisor.to_string()))?;
        let inv = m.inverse();
        let mut out = Self::zero(self.family);
        for (k, v) in &self.terms {
            if !(v % c).is_zero() {
                return Err(Error::NotDivisible(divisor.to_string()));
            }
            let q = k.mul(&inv);
            let lost = k.pairs().any(|(idx, e)| e >= 0 && q.exponent_at(idx) < 0)
                || m.pairs().any(|(idx, e)| e > 0 && k.exponent_at(idx) == 0);
            if lost {
                return Err(Error::NotDivisible(divisor.to_string()));
            }
            out.add_term(q, v / c);
        }
        Ok(out)
    }

    /// Division by `±m` for a monomial `m`, which is a unit of the Laurent
    /// ring, so negative exponents may appear.
    pub fn div_unit(&self, unit: &Self) -> Result<Self> {
        self.check_family(unit)?;
        let (m, c) = unit
            .single_term()
            .filter(|(_, c)| c.abs().is_one())
            .ok_or_else(|| Error::NotDivisible(unit.to_string()))?;
        Ok(self.mul_monomial(&m.inverse()).scale(c.clone()))
    }

    /// `t_i ↦ t_{m+1-i}` and `q_i ↦ q_{m+1-i}` in the multivariate family of
    /// arity `2m`; the identity on `{q, t}`.
    pub fn reverse_indices(&self) -> Self {
        let VarFamily::Multivariate(m) = self.family else {
            return self.clone();
        };
        let m = m as u16;
        let mut out = Self::zero(self.family);
        for (k, c) in &self.terms {
            let pairs = k
                .pairs()
                .map(|(idx, e)| if idx < m { (m - 1 - idx, e) } else { (3 * m - 1 - idx, e) })
                .collect();
            out.add_term(Monomial::from_pairs(pairs), c.clone());
        }
        out
    }

    pub fn specialize(&self, assignments: &[Assignment]) -> Result<Self> {
        let mut cur = self.clone();
        for a in assignments {
            cur = cur.specialize_one(*a)?;
        }
        Ok(cur)
    }

    fn specialize_one(&self, a: Assignment) -> Result<Self> {
        let fam = self.family;
        match a {
            Assignment::Collapse => {
                let VarFamily::Multivariate(m) = fam else {
                    return Err(Error::UnsupportedSpecialization(
                        "collapse needs a multivariate polynomial".into(),
                    ));
                };
                let m = m as u16;
                let mut out = Self::zero(VarFamily::TwoParam);
                for (k, c) in &self.terms {
                    let (mut qe, mut te) = (0i32, 0i32);
                    for (idx, e) in k.pairs() {
                        if idx < m {
                            qe += e * (idx as i32 + 1);
                        } else {
                            te += e * ((idx - m) as i32 + 1);
                        }
                    }
                    out.add_term(Monomial::from_pairs(vec![(0, qe), (1, te)]), c.clone());
                }
                Ok(out)
            }
            Assignment::Zero(p) | Assignment::One(p) => {
                let hits = |idx: u16| fam.is_t(idx) == (p == Param::T);
                let zero = matches!(a, Assignment::Zero(_));
                let mut out = Self::zero(fam);
                'terms: for (k, c) in &self.terms {
                    let mut kept = Vec::new();
                    for (idx, e) in k.pairs() {
                        if hits(idx) {
                            if zero {
                                if e < 0 {
                                    return Err(Error::Pole(fam.var(idx).to_string()));
                                }
                                continue 'terms;
                            }
                        } else {
                            kept.push((idx, e));
                        }
                    }
                    out.add_term(Monomial::from_pairs(kept), c.clone());
                }
                Ok(out)
            }
        }
    }

    /// Exact evaluation at an integer point; every variable that occurs must
    /// be assigned.
    pub fn eval(&self, point: &[(Var, i64)]) -> Result<BigRational> {
        let mut values: Vec<Option<BigInt>> = vec![None; self.family.arity()];
        for &(v, x) in point {
            values[self.family.index(v)? as usize] = Some(BigInt::from(x));
        }
        let mut acc = BigRational::zero();
        for (m, c) in &self.terms {
            let mut term = BigRational::from_integer(c.clone());
            for (idx, e) in m.pairs() {
                let x = values[idx as usize].as_ref().ok_or_else(|| {
                    Error::UnsupportedSpecialization(format!(
                        "no value for {}",
                        self.family.var(idx)
                    ))
                })?;
                if x.is_zero() && e < 0 {
                    return Err(Error::Pole(self.family.var(idx).to_string()));
                }
                let base = BigRational::from_integer(x.clone());
                let p = num_traits::pow(base, e.unsigned_abs() as usize);
                term = if e < 0 { term / p } else { term * p };
            }
            acc += term;
        }
        Ok(acc)
    }

    fn sorted_terms(&self) -> Vec<(&Monomial, &BigInt)> {
        let arity = self.family.arity();
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| a.0.display_cmp(b.0, arity));
        v
    }

    fn fmt_monomial(&self, m: &Monomial, f: &mut impl fmt::Write) -> fmt::Result {
        for (idx, e) in m.pairs() {
            write!(f, "{}", self.family.var(idx))?;
            if e != 1 {
                if (0..10).contains(&e) {
                    write!(f, "^{e}")?;
                } else {
                    write!(f, "^{{{e}}}")?;
                }
            }
        }
        Ok(())
    }

    /// Text with every term negated, for rendering `-(a + b)`.
    pub fn to_string_abs(&self) -> String {
        self.scale(-1).to_string()
    }

    pub fn to_json(&self) -> Vec<JsonTerm> {
        self.sorted_terms()
            .into_iter()
            .map(|(m, c)| JsonTerm {
                exponents: m
                    .pairs()
                    .map(|(idx, e)| (self.family.var(idx).to_string().replace(['{', '}'], ""), e))
                    .collect(),
                coefficient: c.to_string(),
            })
            .collect()
    }

    pub fn from_json(family: VarFamily, terms: &[JsonTerm]) -> Result<Self> {
        let mut out = Self::zero(family);
        for t in terms {
            let mut pairs = Vec::new();
            for (name, &e) in &t.exponents {
                pairs.push((family.index(parse_var_name(name)?)?, e));
            }
            let c: BigInt = t
                .coefficient
                .parse()
                .map_err(|_| Error::Parse(format!("bad coefficient {:?}", t.coefficient)))?;
            out.add_term(Monomial::from_pairs(pairs), c);
        }
        Ok(out)
    }

    /// Parses text such as `q^3t^3 + q^2t^{-5}`, `2 - t_1t_3`, `-(q + t)`.
    pub fn parse(s: &str, family: VarFamily) -> Result<Self> {
        PolyParser { src: s.as_bytes(), pos: 0, family }.parse_all()
    }

    /// Reads an optional coefficient at the start of `s`: a parenthesised sum
    /// or a single term. Returns the coefficient and the bytes consumed.
    pub(crate) fn parse_prefix(s: &str, family: VarFamily) -> Result<(Option<Self>, usize)> {
        let mut p = PolyParser { src: s.as_bytes(), pos: 0, family };
        match p.peek() {
            Some(b'(') => {
                p.pos += 1;
                let inner = p.parse_sum()?;
                if !p.eat(b')') {
                    return Err(p.err("expected ')'"));
                }
                Ok((Some(inner), p.pos))
            }
            Some(b) if b.is_ascii_digit() || b == b'q' || b == b't' => {
                let term = p.parse_term()?;
                Ok((Some(term), p.pos))
            }
            _ => Ok((None, p.pos)),
        }
    }
}

impl std::ops::Neg for LaurentPoly {
    type Output = LaurentPoly;

    fn neg(self) -> LaurentPoly {
        self.scale(-1)
    }
}

impl std::ops::Neg for &LaurentPoly {
    type Output = LaurentPoly;

    fn neg(self) -> LaurentPoly {
        self.scale(-1)
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.sorted_terms().into_iter().enumerate() {
            let neg = c.is_negative();
            match (k, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let a = c.abs();
            if m.is_one() {
                write!(f, "{a}")?;
            } else {
                if !a.is_one() {
                    write!(f, "{a}")?;
                }
                self.fmt_monomial(m, f)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({self})")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JsonTerm {
    pub exponents: BTreeMap<String, i32>,
    pub coefficient: String,
}

fn parse_var_name(name: &str) -> Result<Var> {
    let bad = || Error::Parse(format!("unknown variable {name:?}"));
    let name = name.replace(['{', '}'], "");
    match name.as_str() {
        "q" => Ok(Var::Q),
        "t" => Ok(Var::T),
        _ => {
            let (head, idx) = name.split_once('_').ok_or_else(bad)?;
            let i: usize = idx.parse().map_err(|_| bad())?;
            match head {
                "q" => Ok(Var::Qi(i)),
                "t" => Ok(Var::Ti(i)),
                _ => Err(bad()),
            }
        }
    }
}

struct PolyParser<'a> {
    src: &'a [u8],
    pos: usize,
    family: VarFamily,
}

impl PolyParser<'_> {
    fn err(&self, what: &str) -> Error {
        Error::Parse(format!(
            "{what} at byte {} in {:?}",
            self.pos,
            String::from_utf8_lossy(self.src)
        ))
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && (self.src[self.pos] as char).is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, b: u8) -> bool {
        if self.peek() == Some(b) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn parse_all(mut self) -> Result<LaurentPoly> {
        let p = self.parse_sum()?;
        if self.peek().is_some() {
            return Err(self.err("trailing input"));
        }
        Ok(p)
    }

    fn parse_sum(&mut self) -> Result<LaurentPoly> {
        let mut acc = LaurentPoly::zero(self.family);
        let mut first = true;
        loop {
            let sign = if self.eat(b'-') {
                -1
            } else if self.eat(b'+') || first {
                1
            } else {
                break;
            };
            first = false;
            let term = if self.eat(b'(') {
                let inner = self.parse_sum()?;
                if !self.eat(b')') {
                    return Err(self.err("expected ')'"));
                }
                inner
            } else {
                self.parse_term()?
            };
            acc.add_scaled_assign(&term, &BigInt::from(sign))?;
            match self.peek() {
                Some(b'+') | Some(b'-') => continue,
                _ => break,
            }
        }
        Ok(acc)
    }

    fn parse_int(&mut self) -> Option<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            None
        } else {
            std::str::from_utf8(&self.src[start..self.pos]).ok()?.parse().ok()
        }
    }

    fn parse_braced_int(&mut self) -> Result<i64> {
        let braced = self.eat(b'{');
        let neg = self.eat(b'-');
        let v = self.parse_int().ok_or_else(|| self.err("expected integer"))?;
        if braced && !self.eat(b'}') {
            return Err(self.err("expected '}'"));
        }
        let v: i64 = i64::try_from(v).map_err(|_| self.err("integer too large"))?;
        Ok(if neg { -v } else { v })
    }

    fn parse_term(&mut self) -> Result<LaurentPoly> {
        let coeff = self.parse_int();
        let mut pairs = Vec::new();
        loop {
            self.eat(b'*');
            let v = match self.peek() {
                Some(b'q') => Var::Q,
                Some(b't') => Var::T,
                _ => break,
            };
            self.pos += 1;
            let var = if self.src.get(self.pos) == Some(&b'_') {
                self.pos += 1;
                let i = self.parse_braced_int()?;
                if i <= 0 {
                    return Err(self.err("variable index must be positive"));
                }
                match v {
                    Var::Q => Var::Qi(i as usize),
                    _ => Var::Ti(i as usize),
                }
            } else {
                v
            };
            let e = if self.src.get(self.pos) == Some(&b'^') {
                self.pos += 1;
                self.parse_braced_int()?
            } else {
                1
            };
            pairs.push((self.family.index(var)?, e as i32));
        }
        if coeff.is_none() && pairs.is_empty() {
            return Err(self.err("expected a term"));
        }
        Ok(LaurentPoly::from_term(
            self.family,
            Monomial::from_pairs(pairs),
            coeff.unwrap_or_else(BigInt::one),
        ))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const TP: VarFamily = VarFamily::TwoParam;

    fn p(s: &str) -> LaurentPoly {
        LaurentPoly::parse(s, TP).unwrap()
    }

    #[test]
    fn ring_examples() {
        let t = LaurentPoly::var(TP, Var::T).unwrap();
        let t3 = LaurentPoly::monomial(TP, &[(Var::T, 3)], 1).unwrap();
        assert_eq!(t.try_mul(&t3).unwrap(), LaurentPoly::qt(0, 4));
        let t2 = LaurentPoly::qt(0, 2);
        assert!(t2.try_add(&-&t2).unwrap().is_zero());
        assert_eq!(t2.try_add(&-&t2).unwrap().terms().count(), 0);
        let s = p("t^2 + q^3");
        assert_eq!(s.try_mul(&LaurentPoly::one(TP)).unwrap(), s);
    }

    #[test]
    fn family_mismatch() {
        let mv = LaurentPoly::var(VarFamily::Multivariate(3), Var::Ti(1)).unwrap();
        assert!(matches!(LaurentPoly::qt(0, 1).try_add(&mv), Err(Error::FamilyMismatch(..))));
        assert!(LaurentPoly::var(TP, Var::Ti(1)).is_err());
    }

    #[test]
    fn invert_t() {
        assert_eq!(p("t^3 + qt").invert_t(), p("t^{-3} + qt^{-1}"));
        let x = p("q^2t^5 - 3t + 7");
        assert_eq!(x.invert_t().invert_t(), x);
    }

    #[test]
    fn unit_division_and_reversal() {
        assert_eq!(p("t^3 + q").div_unit(&p("-t^3")).unwrap(), p("-1 - qt^{-3}"));
        assert!(p("t").div_unit(&p("2t")).is_err());
        let mv = VarFamily::Multivariate(4);
        let x = LaurentPoly::parse("t_1t_2^2 + q_4", mv).unwrap();
        assert_eq!(x.reverse_indices(), LaurentPoly::parse("t_4t_3^2 + q_1", mv).unwrap());
    }

    #[test]
    fn specialize_values() {
        assert_eq!(p("t^2").specialize(&[Assignment::One(Param::T)]).unwrap(), p("1"));
        assert_eq!(p("1 + t + qt^3").specialize(&[Assignment::Zero(Param::T)]).unwrap(), p("1"));
        assert_eq!(p("q + t").specialize(&[Assignment::Zero(Param::Q)]).unwrap(), p("t"));
        assert!(matches!(
            p("t^{-1}").specialize(&[Assignment::Zero(Param::T)]),
            Err(Error::Pole(_))
        ));
        let mv = VarFamily::Multivariate(3);
        let x = LaurentPoly::parse("t_1t_3 + q_2q_3t_3", mv).unwrap();
        assert_eq!(x.specialize(&[Assignment::Collapse]).unwrap(), p("t^4 + q^5t^3"));
    }

    #[test]
    fn evaluation() {
        assert_eq!(p("t^4").eval(&[(Var::T, 2)]).unwrap(), BigRational::from_integer(16.into()));
        assert_eq!(
            p("q^3t^3 + q^2").eval(&[(Var::Q, 1), (Var::T, 1)]).unwrap(),
            BigRational::from_integer(2.into())
        );
        assert_eq!(
            p("q^5t^3").eval(&[(Var::Q, 2), (Var::T, 3)]).unwrap(),
            BigRational::from_integer(864.into())
        );
        assert_eq!(
            p("t^{-2}").eval(&[(Var::T, 2)]).unwrap(),
            BigRational::new(1.into(), 4.into())
        );
        assert!(matches!(p("t^{-1}").eval(&[(Var::T, 0)]), Err(Error::Pole(_))));
        assert!(p("q").eval(&[(Var::T, 1)]).is_err());
    }

    #[test]
    fn division_by_monomial() {
        assert_eq!(p("t^3 + qt^5").div_monomial(&p("t^3")).unwrap(), p("1 + qt^2"));
        assert!(matches!(p("t + t^3").div_monomial(&p("t^3")), Err(Error::NotDivisible(_))));
        assert!(p("2t").div_monomial(&p("3t")).is_err());
        assert!(p("t").div_monomial(&p("t + 1")).is_err());
    }

    #[test]
    fn display_and_parse() {
        assert_eq!(p("q^2t^5 + q^3t^3").to_string(), "q^3t^3 + q^2t^5");
        assert_eq!(p("-q^2t^2").to_string(), "-q^2t^2");
        assert_eq!(p("1 - t").to_string(), "1 - t");
        assert_eq!(p("t^{10}").to_string(), "t^{10}");
        assert_eq!(p("2q t^-1").to_string(), "2qt^{-1}");
        assert_eq!(p("-(q + t)"), p("-q - t"));
        assert_eq!(LaurentPoly::zero(TP).to_string(), "0");
        let mv = VarFamily::Multivariate(11);
        let x = LaurentPoly::parse("q_2q_3t_3 + t_{11}^2", mv).unwrap();
        assert_eq!(x.to_string(), "t_{11}^2 + q_2q_3t_3");
        assert!(LaurentPoly::parse("x", TP).is_err());
        assert!(LaurentPoly::parse("q +", TP).is_err());
    }

    #[test]
    fn json_round_trip() {
        let x = p("q^3t^3 - 12q^2t^{-5} + 4");
        let js = serde_json::to_string(&x.to_json()).unwrap();
        let back: Vec<JsonTerm> = serde_json::from_str(&js).unwrap();
        assert_eq!(LaurentPoly::from_json(TP, &back).unwrap(), x);
    }

    #[test]
    fn positivity_predicates() {
        assert!(p("q^2t").is_positive_monomial());
        assert!(!p("q^2 + t").is_positive_monomial());
        assert!(!p("-t").is_positive_monomial());
        assert!(!p("t^{-1}").is_positive_monomial());
        assert_eq!(p("-q - t").sign(), Some(-1));
        assert_eq!(p("q - t").sign(), None);
    }
}
