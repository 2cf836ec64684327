//! Degree-`n` elements of the algebra of non-commutative symmetric functions.
//!
//! An [`NcsfElement`] is a finite sum `Σ c_α B_α` over compositions of a fixed
//! degree, where `B` is one of the bases in [`Basis`] and every coefficient
//! lives in the same [`VarFamily`]. Ring structure is only available in the
//! homogeneous and ribbon bases; the deformed bases are formal labels whose
//! meaning is fixed by their ribbon expansions (see [`crate::qt`]).

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::composition::{check_basis_degree, submasks, Composition, GammaOrdering};
use crate::error::{Error, Result};
use crate::poly::{Assignment, JsonTerm, LaurentPoly, VarFamily};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Basis {
    Homogeneous,
    Ribbon,
    HallLittlewood,
    /// `H̃_α(A;t) = Σ_{β ≥ α} t^{c(α,β)} R_β`, the `q = 0` face of the
    /// modified Macdonald basis.
    ModifiedHallLittlewood,
    Macdonald,
    ModifiedMacdonald,
    /// `R^{(γ)}_α(A;t)`, or `R^{(γ)}_α(A;1/t)` when `inverted_t` is set.
    GammaSchur { level: Composition, inverted_t: bool },
}

impl Basis {
    pub fn gamma_schur(level: Composition) -> Self {
        Basis::GammaSchur { level, inverted_t: false }
    }

    pub fn gamma_schur_inverted(level: Composition) -> Self {
        Basis::GammaSchur { level, inverted_t: true }
    }

    pub fn level(&self) -> Option<&Composition> {
        match self {
            Basis::GammaSchur { level, .. } => Some(level),
            _ => None,
        }
    }

    pub fn name(&self) -> String {
        match self {
            Basis::Homogeneous => "homogeneous".into(),
            Basis::Ribbon => "ribbon".into(),
            Basis::HallLittlewood => "hall-littlewood".into(),
            Basis::ModifiedHallLittlewood => "modified-hall-littlewood".into(),
            Basis::Macdonald => "macdonald".into(),
            Basis::ModifiedMacdonald => "modified-macdonald".into(),
            Basis::GammaSchur { level, inverted_t: false } => format!("gamma-schur({level})"),
            Basis::GammaSchur { level, inverted_t: true } => {
                format!("gamma-schur({level}) at 1/t")
            }
        }
    }

    /// Checks that `alpha` may index an element of this basis in degree `n`.
    fn admits(&self, n: usize, alpha: &Composition) -> Result<()> {
        if alpha.degree() != n {
            return Err(Error::DegreeMismatch { left: n, right: alpha.degree() });
        }
        if let Basis::GammaSchur { level, .. } = self {
            if !alpha.refines(level)? {
                return Err(Error::NotRefining { alpha: *alpha, gamma: *level });
            }
        }
        Ok(())
    }

    /// Number of basis elements in degree `n`.
    pub fn dimension(&self, n: usize) -> usize {
        match self {
            Basis::GammaSchur { level, .. } => GammaOrdering::new(*level).restricted_len(),
            _ => 1usize << n.saturating_sub(1),
        }
    }

    /// Dense index ordering: `φ`, or restricted `φ_γ` at a level.
    pub fn ordering(&self, n: usize) -> Result<GammaOrdering> {
        match self {
            Basis::GammaSchur { level, .. } => Ok(GammaOrdering::new(*level)),
            _ => GammaOrdering::identity(n),
        }
    }

    fn symbol(&self, alpha: &Composition, multivariate: bool) -> String {
        let sub = subscript(alpha);
        let (t, qt) = if multivariate { ("t_*", "q_*,t_*") } else { ("t", "q,t") };
        match self {
            Basis::Homogeneous => format!("h_{sub}"),
            Basis::Ribbon => format!("R_{sub}"),
            Basis::HallLittlewood => format!("H_{sub}(A;{t})"),
            Basis::ModifiedHallLittlewood => format!("~H_{sub}(A;{t})"),
            Basis::Macdonald => format!("H_{sub}(A;{qt})"),
            Basis::ModifiedMacdonald => format!("~H_{sub}(A;{qt})"),
            Basis::GammaSchur { level, inverted_t } => {
                let arg = if *inverted_t { format!("1/{t}") } else { t.to_string() };
                format!("R^{{({})}}_{sub}(A;{arg})", level.label())
            }
        }
    }
}

fn subscript(alpha: &Composition) -> String {
    let l = alpha.label();
    if l.len() == 1 {
        l
    } else {
        format!("{{{l}}}")
    }
}

impl fmt::Display for Basis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Flavor {
    SingleParam,
    Multivariate,
}

impl Flavor {
    pub fn family(self, n: usize) -> VarFamily {
        match self {
            Flavor::SingleParam => VarFamily::TwoParam,
            Flavor::Multivariate => VarFamily::multivariate_for_degree(n),
        }
    }

    pub fn of(family: VarFamily) -> Self {
        match family {
            VarFamily::TwoParam => Flavor::SingleParam,
            VarFamily::Multivariate(_) => Flavor::Multivariate,
        }
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct NcsfElement {
    degree: usize,
    basis: Basis,
    family: VarFamily,
    coeffs: BTreeMap<Composition, LaurentPoly>,
}

impl NcsfElement {
    pub fn zero(degree: usize, basis: Basis, family: VarFamily) -> Result<Self> {
        if degree == 0 {
            return Err(Error::InvalidComposition("degree 0".into()));
        }
        if let Some(level) = basis.level() {
            if level.degree() != degree {
                return Err(Error::DegreeMismatch { left: degree, right: level.degree() });
            }
        }
        Ok(Self { degree, basis, family, coeffs: BTreeMap::new() })
    }

    /// The basis element `B_α` with coefficient 1.
    pub fn basis_element(alpha: Composition, basis: Basis, family: VarFamily) -> Result<Self> {
        let mut e = Self::zero(alpha.degree(), basis, family)?;
        e.add_term(alpha, LaurentPoly::one(family))?;
        Ok(e)
    }

    pub fn ribbon(alpha: Composition) -> Self {
        Self::basis_element(alpha, Basis::Ribbon, VarFamily::TwoParam)
            .expect("a ribbon element is always admissible")
    }

    pub fn homogeneous(alpha: Composition) -> Self {
        Self::basis_element(alpha, Basis::Homogeneous, VarFamily::TwoParam)
            .expect("a homogeneous element is always admissible")
    }

    pub fn from_terms(
        degree: usize,
        basis: Basis,
        family: VarFamily,
        terms: impl IntoIterator<Item = (Composition, LaurentPoly)>,
    ) -> Result<Self> {
        let mut e = Self::zero(degree, basis, family)?;
        for (alpha, c) in terms {
            e.add_term(alpha, c)?;
        }
        Ok(e)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn basis(&self) -> &Basis {
        &self.basis
    }

    pub fn family(&self) -> VarFamily {
        self.family
    }

    pub fn flavor(&self) -> Flavor {
        Flavor::of(self.family)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, alpha: &Composition) -> Option<&LaurentPoly> {
        self.coeffs.get(alpha)
    }

    /// Terms in `φ` order.
    pub fn terms(&self) -> impl Iterator<Item = (&Composition, &LaurentPoly)> {
        self.coeffs.iter()
    }

    pub fn support(&self) -> impl Iterator<Item = Composition> + '_ {
        self.coeffs.keys().copied()
    }

    /// `self += c · B_α`.
    pub fn add_term(&mut self, alpha: Composition, c: LaurentPoly) -> Result<()> {
        self.basis.admits(self.degree, &alpha)?;
        if c.family() != self.family {
            return Err(Error::FamilyMismatch(c.family().to_string(), self.family.to_string()));
        }
        if c.is_zero() {
            return Ok(());
        }
        match self.coeffs.entry(alpha) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                o.get_mut().add_assign(&c)?;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
        Ok(())
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.degree != other.degree {
            return Err(Error::DegreeMismatch { left: self.degree, right: other.degree });
        }
        if self.basis != other.basis {
            return Err(Error::WrongBasis {
                expected: self.basis.name(),
                found: other.basis.name(),
            });
        }
        if self.family != other.family {
            return Err(Error::FamilyMismatch(self.family.to_string(), other.family.to_string()));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (a, c) in &other.coeffs {
            out.add_term(*a, c.clone())?;
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&other.scale_int(-1))
    }

    pub fn scale_int(&self, k: i64) -> Self {
        self.map_coeffs_infallible(|c| c.scale(k))
    }

    /// Multiplies every coefficient by `c`.
    pub fn scale(&self, c: &LaurentPoly) -> Result<Self> {
        let mut out = Self::zero(self.degree, self.basis.clone(), self.family)?;
        for (a, x) in &self.coeffs {
            out.add_term(*a, x.try_mul(c)?)?;
        }
        Ok(out)
    }

    fn map_coeffs_infallible(&self, f: impl Fn(&LaurentPoly) -> LaurentPoly) -> Self {
        Self {
            degree: self.degree,
            basis: self.basis.clone(),
            family: self.family,
            coeffs: self
                .coeffs
                .iter()
                .map(|(a, c)| (*a, f(c)))
                .filter(|(_, c)| !c.is_zero())
                .collect(),
        }
    }

    /// Same coefficients, relabelled as an element of `basis`.
    pub fn with_basis(&self, basis: Basis) -> Result<Self> {
        Self::from_terms(self.degree, basis, self.family, self.coeffs.clone())
    }

    /// Applies a specialization to every coefficient; a collapse moves the
    /// element to the two-parameter family.
    pub fn specialize(&self, assignments: &[Assignment]) -> Result<Self> {
        let family = if assignments.contains(&Assignment::Collapse) {
            VarFamily::TwoParam
        } else {
            self.family
        };
        let mut out = Self::zero(self.degree, self.basis.clone(), family)?;
        for (a, c) in &self.coeffs {
            out.add_term(*a, c.specialize(assignments)?)?;
        }
        Ok(out)
    }

    /// `t ↦ 1/t` in every coefficient.
    pub fn invert_t(&self) -> Self {
        self.map_coeffs_infallible(LaurentPoly::invert_t)
    }

    fn expect_basis(&self, expected: Basis) -> Result<()> {
        if self.basis != expected {
            return Err(Error::WrongBasis { expected: expected.name(), found: self.basis.name() });
        }
        Ok(())
    }

    /// Dense coefficient vector under [`Basis::ordering`].
    pub fn to_dense(&self) -> Result<Vec<LaurentPoly>> {
        check_basis_degree(self.degree)?;
        let ord = self.basis.ordering(self.degree)?;
        let mut v = vec![LaurentPoly::zero(self.family); self.basis.dimension(self.degree)];
        for (a, c) in &self.coeffs {
            v[ord.restricted_rank(a)? as usize] = c.clone();
        }
        Ok(v)
    }

    pub fn from_dense(
        degree: usize,
        basis: Basis,
        family: VarFamily,
        values: Vec<LaurentPoly>,
    ) -> Result<Self> {
        check_basis_degree(degree)?;
        let dim = basis.dimension(degree);
        if values.len() != dim {
            return Err(Error::DimensionMismatch { expected: dim, found: values.len() });
        }
        let ord = basis.ordering(degree)?;
        let mut e = Self::zero(degree, basis, family)?;
        for (r, c) in values.into_iter().enumerate() {
            if !c.is_zero() {
                e.add_term(ord.unrank_restricted(r as u64)?, c)?;
            }
        }
        Ok(e)
    }

    /// `h_α = Σ_{β ≥ α} R_β`.
    pub fn h_to_ribbon(&self) -> Result<Self> {
        self.expect_basis(Basis::Homogeneous)?;
        let mut out = Self::zero(self.degree, Basis::Ribbon, self.family)?;
        for (a, c) in &self.coeffs {
            for s in submasks(a.descents()) {
                out.add_term(Composition::from_descents(self.degree, s)?, c.clone())?;
            }
        }
        Ok(out)
    }

    /// `R_α = Σ_{β ≥ α} (-1)^{l(α) - l(β)} h_β`.
    pub fn ribbon_to_h(&self) -> Result<Self> {
        self.expect_basis(Basis::Ribbon)?;
        let mut out = Self::zero(self.degree, Basis::Homogeneous, self.family)?;
        for (a, c) in &self.coeffs {
            let d = a.descents();
            for s in submasks(d) {
                let sign = if (d.count_ones() - s.count_ones()) % 2 == 0 { 1 } else { -1 };
                out.add_term(Composition::from_descents(self.degree, s)?, c.scale(sign))?;
            }
        }
        Ok(out)
    }

    /// Product in the homogeneous basis (`h_α h_β = h_{α·β}`) or the ribbon
    /// basis (`R_α R_β = R_{α·β} + R_{α|β}`).
    pub fn product(&self, other: &Self) -> Result<Self> {
        if self.basis != other.basis {
            return Err(Error::WrongBasis { expected: self.basis.name(), found: other.basis.name() });
        }
        if self.family != other.family {
            return Err(Error::FamilyMismatch(self.family.to_string(), other.family.to_string()));
        }
        let ribbon = match self.basis {
            Basis::Homogeneous => false,
            Basis::Ribbon => true,
            _ => return Err(Error::UnsupportedBasis(self.basis.name())),
        };
        let mut out = Self::zero(self.degree + other.degree, self.basis.clone(), self.family)?;
        for (a, x) in &self.coeffs {
            for (b, y) in &other.coeffs {
                let c = x.try_mul(y)?;
                out.add_term(a.concat(b)?, c.clone())?;
                if ribbon {
                    out.add_term(a.attach(b)?, c)?;
                }
            }
        }
        Ok(out)
    }

    fn relabel(&self, f: impl Fn(&Composition) -> Composition) -> Self {
        Self {
            degree: self.degree,
            basis: self.basis.clone(),
            family: self.family,
            coeffs: self.coeffs.iter().map(|(a, c)| (f(a), c.clone())).collect(),
        }
    }

    /// `ω^c(R_α) = R_{α^c}`.
    pub fn omega_c(&self) -> Result<Self> {
        self.expect_basis(Basis::Ribbon)?;
        Ok(self.relabel(Composition::complement))
    }

    /// `←ω(R_α) = R_{⃖α}`.
    pub fn omega_rev(&self) -> Result<Self> {
        self.expect_basis(Basis::Ribbon)?;
        Ok(self.relabel(Composition::reverse))
    }

    /// Commutative image in the homogeneous basis: `h_α ↦ h_λ` with `λ` the
    /// parts of `α` sorted decreasingly. Ribbon input is converted first.
    pub fn chi(&self) -> Result<BTreeMap<Vec<u32>, LaurentPoly>> {
        let h = match self.basis {
            Basis::Homogeneous => self.clone(),
            Basis::Ribbon => self.ribbon_to_h()?,
            _ => return Err(Error::UnsupportedBasis(self.basis.name())),
        };
        let mut out: BTreeMap<Vec<u32>, LaurentPoly> = BTreeMap::new();
        for (a, c) in &h.coeffs {
            let mut lambda = a.parts();
            lambda.sort_unstable_by(|x, y| y.cmp(x));
            out.entry(lambda)
                .or_insert_with(|| LaurentPoly::zero(self.family))
                .add_assign(c)?;
        }
        out.retain(|_, c| !c.is_zero());
        Ok(out)
    }

    /// Terms in display order: descending dense rank, so the finest
    /// composition (the leading term of a triangular expansion) comes first.
    fn display_terms(&self) -> Vec<(&Composition, &LaurentPoly)> {
        let ord = self.basis.ordering(self.degree).ok();
        let mut v: Vec<_> = self.coeffs.iter().collect();
        v.sort_by_key(|(a, _)| {
            std::cmp::Reverse(ord.as_ref().and_then(|o| o.rank_phi_gamma(a).ok()).unwrap_or(0))
        });
        v
    }

    pub fn to_json(&self) -> ElementJson {
        ElementJson {
            degree: self.degree,
            basis: self.basis.clone(),
            flavor: self.flavor(),
            terms: self
                .display_terms()
                .into_iter()
                .map(|(a, c)| TermJson { composition: *a, poly: c.to_json() })
                .collect(),
        }
    }

    pub fn from_json(js: &ElementJson) -> Result<Self> {
        let family = js.flavor.family(js.degree);
        let mut e = Self::zero(js.degree, js.basis.clone(), family)?;
        for t in &js.terms {
            e.add_term(t.composition, LaurentPoly::from_json(family, &t.poly)?)?;
        }
        Ok(e)
    }

    /// Parses the text rendering. The family is multivariate when any
    /// coefficient mentions an indexed variable or a basis symbol carries the
    /// `t_*` marker; otherwise it is `{q, t}`.
    pub fn parse(s: &str) -> Result<Self> {
        ElementParser::new(s)?.parse()
    }
}

impl fmt::Display for NcsfElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        let mv = self.flavor() == Flavor::Multivariate;
        for (k, (a, c)) in self.display_terms().into_iter().enumerate() {
            let negative = c.sign() == Some(-1);
            let shown = if negative { c.scale(-1) } else { c.clone() };
            match (k, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if !shown.is_one() {
                if shown.len() > 1 {
                    write!(f, "({shown}) ")?;
                } else {
                    write!(f, "{shown} ")?;
                }
            }
            f.write_str(&self.basis.symbol(a, mv))?;
        }
        Ok(())
    }
}

impl fmt::Debug for NcsfElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{} | {}] {}", self.degree, self.basis, self)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ElementJson {
    pub degree: usize,
    pub basis: Basis,
    pub flavor: Flavor,
    pub terms: Vec<TermJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub composition: Composition,
    pub poly: Vec<JsonTerm>,
}

struct ElementParser<'a> {
    src: &'a str,
    pos: usize,
    family: Option<VarFamily>,
}

impl<'a> ElementParser<'a> {
    fn new(src: &'a str) -> Result<Self> {
        let multivariate = src.contains("q_") || src.contains("t_");
        let family = if multivariate { None } else { Some(VarFamily::TwoParam) };
        Ok(Self { src, pos: 0, family })
    }

    fn err(&self, what: &str) -> Error {
        Error::Parse(format!("{what} at byte {} in {:?}", self.pos, self.src))
    }

    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn skip_ws(&mut self) {
        let r = self.rest();
        self.pos += r.len() - r.trim_start().len();
    }

    fn eat(&mut self, tok: &str) -> bool {
        self.skip_ws();
        if self.rest().starts_with(tok) {
            self.pos += tok.len();
            true
        } else {
            false
        }
    }

    /// Multivariate families need the degree, which only the first basis
    /// symbol reveals, so the first pass reads symbols only.
    fn first_degree(&self) -> Result<usize> {
        for (i, _) in self.src.match_indices(['R', 'h', 'H']) {
            let mut p = ElementParser { src: self.src, pos: i, family: None };
            if let Ok((_, alpha)) = p.basis_symbol() {
                return Ok(alpha.degree());
            }
        }
        Err(self.err("no basis symbol"))
    }

    fn parse(mut self) -> Result<NcsfElement> {
        self.skip_ws();
        if self.rest() == "0" {
            return Err(self.err("the zero element has no basis or degree"));
        }
        let family = match self.family {
            Some(f) => f,
            None => VarFamily::multivariate_for_degree(self.first_degree()?),
        };
        self.family = Some(family);
        let mut out: Option<NcsfElement> = None;
        let mut first = true;
        loop {
            self.skip_ws();
            if self.rest().is_empty() {
                break;
            }
            let sign = if self.eat("-") {
                -1
            } else if self.eat("+") || first {
                1
            } else {
                return Err(self.err("expected '+' or '-'"));
            };
            first = false;
            self.skip_ws();
            let (coeff, used) = if self.rest().starts_with(['R', 'h', 'H', '~']) {
                (None, 0)
            } else {
                LaurentPoly::parse_prefix(self.rest(), family)?
            };
            self.pos += used;
            self.eat("*");
            self.skip_ws();
            let (basis, alpha) = self.basis_symbol()?;
            let c = coeff.unwrap_or_else(|| LaurentPoly::one(family)).scale(sign);
            let e = out.get_or_insert(NcsfElement::zero(alpha.degree(), basis.clone(), family)?);
            if e.basis != basis {
                return Err(self.err("mixed bases in one element"));
            }
            e.add_term(alpha, c)?;
        }
        out.ok_or_else(|| self.err("empty input"))
    }

    fn label(&mut self) -> Result<Composition> {
        if self.eat("{") {
            let end = self.rest().find('}').ok_or_else(|| self.err("expected '}'"))?;
            let s = &self.rest()[..end];
            self.pos += end + 1;
            Composition::parse_label(s)
        } else {
            let c = self.rest().chars().next().ok_or_else(|| self.err("expected a label"))?;
            self.pos += c.len_utf8();
            Composition::parse_label(&c.to_string())
        }
    }

    fn args(&mut self) -> Result<Option<String>> {
        if self.rest().starts_with('(') {
            let end = self.rest().find(')').ok_or_else(|| self.err("expected ')'"))?;
            let s = self.rest()[1..end].replace(' ', "");
            self.pos += end + 1;
            Ok(Some(s))
        } else {
            Ok(None)
        }
    }

    fn basis_symbol(&mut self) -> Result<(Basis, Composition)> {
        self.skip_ws();
        let modified = self.eat("~");
        let head = self.rest().chars().next().ok_or_else(|| self.err("expected a basis symbol"))?;
        self.pos += 1;
        match head {
            'h' | 'R' if !modified => {
                if head == 'R' && self.rest().starts_with("^{(") {
                    self.pos += 3;
                    let end = self.rest().find(")}").ok_or_else(|| self.err("expected ')}'"))?;
                    let level = Composition::parse_label(&self.rest()[..end])?;
                    self.pos += end + 2;
                    if !self.rest().starts_with('_') {
                        return Err(self.err("expected '_'"));
                    }
                    self.pos += 1;
                    let alpha = self.label()?;
                    let inverted_t = match self.args()? {
                        None => false,
                        Some(a) => a.contains("1/"),
                    };
                    return Ok((Basis::GammaSchur { level, inverted_t }, alpha));
                }
                if !self.rest().starts_with('_') {
                    return Err(self.err("expected '_'"));
                }
                self.pos += 1;
                let alpha = self.label()?;
                self.args()?;
                let basis = if head == 'h' { Basis::Homogeneous } else { Basis::Ribbon };
                Ok((basis, alpha))
            }
            'H' => {
                if !self.rest().starts_with('_') {
                    return Err(self.err("expected '_'"));
                }
                self.pos += 1;
                let alpha = self.label()?;
                let two = self.args()?.is_some_and(|a| a.contains('q'));
                let basis = match (modified, two) {
                    (false, false) => Basis::HallLittlewood,
                    (true, false) => Basis::ModifiedHallLittlewood,
                    (false, true) => Basis::Macdonald,
                    (true, true) => Basis::ModifiedMacdonald,
                };
                Ok((basis, alpha))
            }
            _ => Err(self.err("unknown basis symbol")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(s: &str) -> Composition {
        Composition::parse_label(s).unwrap()
    }

    fn el(s: &str) -> NcsfElement {
        NcsfElement::parse(s).unwrap()
    }

    #[test]
    fn h_and_ribbon_small_cases() {
        assert_eq!(NcsfElement::ribbon(c("11")).ribbon_to_h().unwrap(), el("h_{11} - h_2"));
        assert_eq!(NcsfElement::homogeneous(c("11")).h_to_ribbon().unwrap(), el("R_{11} + R_2"));
        assert_eq!(NcsfElement::homogeneous(c("4")).h_to_ribbon().unwrap(), el("R_4"));
        assert!(NcsfElement::homogeneous(c("4")).ribbon_to_h().is_err());
    }

    #[test]
    fn products() {
        let p = NcsfElement::ribbon(c("2")).product(&NcsfElement::ribbon(c("11"))).unwrap();
        assert_eq!(p, el("R_{211} + R_{31}"));
        let h = NcsfElement::homogeneous(c("2")).product(&NcsfElement::homogeneous(c("1"))).unwrap();
        assert_eq!(h, el("h_{21}"));
    }

    #[test]
    fn omegas() {
        assert_eq!(NcsfElement::ribbon(c("121")).omega_c().unwrap(), el("R_{22}"));
        assert_eq!(NcsfElement::ribbon(c("31")).omega_rev().unwrap(), el("R_{13}"));
    }

    #[test]
    fn chi_sorts_parts() {
        let m = NcsfElement::homogeneous(c("121")).chi().unwrap();
        assert_eq!(m.len(), 1);
        assert!(m[&vec![2, 1, 1]].is_one());
        let two = el("h_{21} + h_{12}").chi().unwrap();
        assert_eq!(two[&vec![2, 1]], LaurentPoly::constant(VarFamily::TwoParam, 2));
    }

    #[test]
    fn text_round_trip() {
        for s in [
            "R_{121} + t R_{31} + t^3 R_{13} + t^4 R_4",
            "-q^2t^2 R_{22} - (q^5t^2 + q^2t^3) R_{112}",
            "R^{(41)}_{1121}(A;t) + t^2 R^{(41)}_{221}(A;t)",
            "q R^{(22)}_{22}(A;1/t) + R^{(22)}_{211}(A;1/t)",
            "~H_{31}(A;q,t) - 2 ~H_4(A;q,t)",
            "R_{121} + t_1 R_{31} + t_3 R_{13} + t_1t_3 R_4",
        ] {
            let e = el(s);
            assert_eq!(el(&e.to_string()), e, "{s}");
        }
        assert_eq!(el("R_{121} + t R_{31} + t^3 R_{13} + t^4 R_4").to_string(),
            "R_{121} + t R_{31} + t^3 R_{13} + t^4 R_4");
        let mv = el("t_1 R_{31}");
        assert_eq!(mv.family(), VarFamily::Multivariate(3));
    }

    #[test]
    fn json_round_trip() {
        let e = el("R^{(31)}_{121}(A;t) + t^3 R^{(31)}_{31}(A;t)");
        let js = serde_json::to_string(&e.to_json()).unwrap();
        let back: ElementJson = serde_json::from_str(&js).unwrap();
        assert_eq!(NcsfElement::from_json(&back).unwrap(), e);
    }

    #[test]
    fn level_is_enforced() {
        assert!(matches!(
            NcsfElement::basis_element(c("13"), Basis::gamma_schur(c("31")), VarFamily::TwoParam),
            Err(Error::NotRefining { .. })
        ));
    }

    #[test]
    fn dense_views() {
        let e = el("R^{(31)}_{121}(A;t) + t^3 R^{(31)}_{31}(A;t)");
        let v = e.to_dense().unwrap();
        assert_eq!(v.len(), 4);
        assert!(v[0].is_positive_monomial() && v[1].is_one());
        let back =
            NcsfElement::from_dense(4, e.basis().clone(), VarFamily::TwoParam, v).unwrap();
        assert_eq!(back, e);
    }
}
