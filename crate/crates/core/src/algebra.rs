//! Finitely presented graded-commutative algebras: monomial bases, the
//! Koszul sign rule, rewrite-rule normal forms, morphisms and module
//! structures.
//!
//! Supported relation shapes are generator exponent bounds plus oriented
//! rewrite rules whose lead is a monomial (the engine only ever needs
//! monomial annihilations and the single binomial rule `v^2 -> c·t·x^(n-1)`
//! in characteristic two).

use crate::error::{Error, Result};
use crate::scalar::{FieldSpec, Scalar};
use crate::series::{Bidegree, DimensionSeries, Window};
use serde::Serialize;
use std::collections::BTreeMap;
use std::fmt;

/// One generator of a presentation. `bound` is the largest allowed exponent
/// (`1` for exterior generators, `n` for a truncated power `x^(n+1) = 0`,
/// absent for polynomial generators). `degree` is the grading used for
/// Koszul signs and Hilbert series; presentations living on a spectral
/// sequence page also carry a bidegree, and then `degree` is the homological
/// total degree `-(p+q)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GeneratorSpec {
    pub name: String,
    pub degree: i64,
    pub bound: Option<u32>,
    pub bidegree: Option<Bidegree>,
}

impl GeneratorSpec {
    pub fn polynomial(name: &str, degree: i64) -> Self {
        GeneratorSpec {
            name: name.into(),
            degree,
            bound: None,
            bidegree: None,
        }
    }

    pub fn bounded(name: &str, degree: i64, bound: u32) -> Self {
        GeneratorSpec {
            name: name.into(),
            degree,
            bound: Some(bound),
            bidegree: None,
        }
    }

    pub fn exterior(name: &str, degree: i64) -> Self {
        Self::bounded(name, degree, 1)
    }

    pub fn with_bidegree(mut self, p: u32, q: i64) -> Self {
        self.bidegree = Some(Bidegree::new(p, q));
        self
    }

    pub fn is_odd(&self) -> bool {
        self.degree.rem_euclid(2) == 1
    }
}

/// Exponent vector aligned with the generator list of a presentation.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(n: usize) -> Self {
        Monomial(vec![0; n])
    }

    pub fn generator(n: usize, idx: usize) -> Self {
        let mut e = vec![0; n];
        e[idx] = 1;
        Monomial(e)
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn quotient(&self, divisor: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(&divisor.0)
                .map(|(a, b)| a - b)
                .collect(),
        )
    }

    pub fn product_exps(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

/// A linear combination of monomials with exact coefficients. Plain data:
/// all arithmetic goes through the owning presentation.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Element {
    pub terms: BTreeMap<Monomial, Scalar>,
}

impl Element {
    pub fn zero() -> Self {
        Element::default()
    }

    pub fn term(mon: Monomial, coeff: Scalar) -> Self {
        let mut e = Element::zero();
        e.add_term(mon, coeff);
        e
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, mon: Monomial, coeff: Scalar) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(mon) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get().add(&coeff);
                if sum.is_zero() {
                    o.remove();
                } else {
                    o.insert(sum);
                }
            }
        }
    }

    pub fn plus(&self, other: &Element) -> Element {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn minus(&self, other: &Element) -> Element {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.neg());
        }
        out
    }

    pub fn scale(&self, c: &Scalar) -> Element {
        let mut out = Element::zero();
        for (m, k) in &self.terms {
            out.add_term(m.clone(), k.mul(c));
        }
        out
    }
}

/// Oriented rewrite rule: any monomial divisible by `lead` is rewritten via
/// `lead -> rhs`. `rhs` may be zero (monomial annihilation).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Relation {
    pub lead: Monomial,
    pub rhs: Element,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum AlgebraKind {
    Polynomial,
    TruncatedPolynomial,
    Exterior,
    Tensor,
    General,
}

/// A finitely presented graded-commutative algebra over an exact field.
#[derive(Debug, Clone, PartialEq)]
pub struct AlgebraPresentation {
    pub field: FieldSpec,
    pub generators: Vec<GeneratorSpec>,
    pub relations: Vec<Relation>,
    pub kind: AlgebraKind,
}

impl AlgebraPresentation {
    /// Builds a presentation. Odd-degree generators in characteristic ≠ 2
    /// implicitly receive exponent bound 1 (forced by graded commutativity).
    pub fn new(
        field: FieldSpec,
        mut generators: Vec<GeneratorSpec>,
        relations: Vec<Relation>,
        kind: AlgebraKind,
    ) -> Result<Self> {
        let mut seen = std::collections::BTreeSet::new();
        for g in &generators {
            if !seen.insert(g.name.clone()) {
                return Err(Error::DuplicateGenerator(g.name.clone()));
            }
        }
        if field.characteristic != 2 {
            for g in &mut generators {
                if g.is_odd() && g.bound.is_none() {
                    g.bound = Some(1);
                }
            }
        }
        let n = generators.len();
        for r in &relations {
            if r.lead.0.len() != n || r.rhs.terms.keys().any(|m| m.0.len() != n) {
                return Err(Error::InvalidInput(
                    "relation exponent vectors must match the generator count".into(),
                ));
            }
        }
        Ok(AlgebraPresentation {
            field,
            generators,
            relations,
            kind,
        })
    }

    /// The ground field viewed as an algebra (no generators).
    pub fn unit(field: FieldSpec) -> Self {
        AlgebraPresentation {
            field,
            generators: Vec::new(),
            relations: Vec::new(),
            kind: AlgebraKind::Polynomial,
        }
    }

    /// `K[x]/(x^(n+1))` with `|x| = degree`.
    pub fn truncated(field: FieldSpec, name: &str, degree: i64, n: u32) -> Result<Self> {
        Self::new(
            field,
            vec![GeneratorSpec::bounded(name, degree, n)],
            Vec::new(),
            AlgebraKind::TruncatedPolynomial,
        )
    }

    /// Exterior algebra on the given (name, degree) pairs.
    pub fn exterior(field: FieldSpec, gens: &[(&str, i64)]) -> Result<Self> {
        Self::new(
            field,
            gens.iter()
                .map(|(n, d)| GeneratorSpec::exterior(n, *d))
                .collect(),
            Vec::new(),
            AlgebraKind::Exterior,
        )
    }

    /// Polynomial algebra on the given (name, degree) pairs.
    pub fn polynomial(field: FieldSpec, gens: &[(&str, i64)]) -> Result<Self> {
        Self::new(
            field,
            gens.iter()
                .map(|(n, d)| GeneratorSpec::polynomial(n, *d))
                .collect(),
            Vec::new(),
            AlgebraKind::Polynomial,
        )
    }

    pub fn gen_index(&self, name: &str) -> Result<usize> {
        self.generators
            .iter()
            .position(|g| g.name == name)
            .ok_or_else(|| Error::UnknownGenerator(name.into()))
    }

    pub fn gen_element(&self, name: &str) -> Result<Element> {
        let i = self.gen_index(name)?;
        Ok(Element::term(
            Monomial::generator(self.generators.len(), i),
            self.field.one(),
        ))
    }

    pub fn one_element(&self) -> Element {
        Element::term(Monomial::one(self.generators.len()), self.field.one())
    }

    pub fn monomial_degree(&self, m: &Monomial) -> i64 {
        m.0.iter()
            .zip(&self.generators)
            .map(|(e, g)| *e as i64 * g.degree)
            .sum()
    }

    pub fn monomial_bidegree(&self, m: &Monomial) -> Option<Bidegree> {
        let mut p = 0u32;
        let mut q = 0i64;
        for (e, g) in m.0.iter().zip(&self.generators) {
            let b = g.bidegree?;
            p += e * b.p;
            q += *e as i64 * b.q;
        }
        Some(Bidegree::new(p, q))
    }

    pub fn is_polynomial(&self) -> bool {
        self.generators.iter().all(|g| g.bound.is_none()) && self.relations.is_empty()
    }

    pub fn is_finite_dimensional(&self) -> bool {
        self.generators.iter().all(|g| g.bound.is_some())
    }

    /// Internal-degree support interval of a finite-dimensional algebra.
    pub fn degree_support(&self) -> Result<Window> {
        if !self.is_finite_dimensional() {
            return Err(Error::NotFiniteDimensional(self.describe()));
        }
        let mut lo = 0i64;
        let mut hi = 0i64;
        for g in &self.generators {
            let top = g.bound.unwrap() as i64 * g.degree;
            if top < 0 {
                lo += top;
            } else {
                hi += top;
            }
        }
        Window::new(lo, hi)
    }

    pub fn describe(&self) -> String {
        format!("{self}")
    }

    fn parity(&self, idx: usize) -> u32 {
        (self.generators[idx].degree.rem_euclid(2)) as u32
    }

    /// Koszul sign for merging `left * right` into a single sorted monomial:
    /// every generator copy in `right` moves left past the copies of all
    /// strictly later generators in `left`.
    fn merge_sign(&self, left: &Monomial, right: &Monomial) -> Scalar {
        if self.field.characteristic == 2 {
            return self.field.one();
        }
        let mut crossings: u64 = 0;
        for j in 0..right.0.len() {
            if right.0[j] == 0 || self.parity(j) == 0 {
                continue;
            }
            for i in (j + 1)..left.0.len() {
                if left.0[i] == 0 || self.parity(i) == 0 {
                    continue;
                }
                crossings += (left.0[i] as u64) * (right.0[j] as u64);
            }
        }
        if crossings % 2 == 0 {
            self.field.one()
        } else {
            self.field.one().neg()
        }
    }

    /// Normal form of a raw exponent vector: exponent bounds first, then
    /// rewrite rules ordered as declared. Terminates because every rule
    /// strictly lowers its lead's exponents.
    pub fn normalize_monomial(&self, mon: &Monomial) -> Element {
        for (i, g) in self.generators.iter().enumerate() {
            if let Some(b) = g.bound {
                if mon.0[i] > b {
                    return Element::zero();
                }
            }
        }
        for rel in &self.relations {
            if rel.lead.divides(mon) {
                let cofactor = mon.quotient(&rel.lead);
                // mon = sign * cofactor * lead as sorted monomials.
                let sign = self.merge_sign(&cofactor, &rel.lead);
                let mut out = Element::zero();
                for (rmon, rc) in &rel.rhs.terms {
                    let merge = self.merge_sign(&cofactor, rmon);
                    let merged = cofactor.product_exps(rmon);
                    let coeff = sign.mul(&merge.mul(rc));
                    for (nm, nc) in self.normalize_monomial(&merged).terms {
                        out.add_term(nm, nc.mul(&coeff));
                    }
                }
                return out;
            }
        }
        Element::term(mon.clone(), self.field.one())
    }

    pub fn is_basis_monomial(&self, mon: &Monomial) -> bool {
        for (i, g) in self.generators.iter().enumerate() {
            if let Some(b) = g.bound {
                if mon.0[i] > b {
                    return false;
                }
            }
        }
        !self.relations.iter().any(|r| r.lead.divides(mon))
    }

    pub fn normalize(&self, e: &Element) -> Element {
        let mut out = Element::zero();
        for (m, c) in &e.terms {
            for (nm, nc) in self.normalize_monomial(m).terms {
                out.add_term(nm, nc.mul(c));
            }
        }
        out
    }

    /// Graded-commutative product expanded in the monomial basis, Koszul
    /// signs applied, exponent bounds and relations enforced.
    pub fn multiply(&self, a: &Element, b: &Element) -> Element {
        let mut out = Element::zero();
        for (ma, ca) in &a.terms {
            for (mb, cb) in &b.terms {
                let sign = self.merge_sign(ma, mb);
                let raw = ma.product_exps(mb);
                let coeff = ca.mul(cb).mul(&sign);
                for (nm, nc) in self.normalize_monomial(&raw).terms {
                    out.add_term(nm, nc.mul(&coeff));
                }
            }
        }
        out
    }

    pub fn power(&self, a: &Element, k: u32) -> Element {
        let mut out = self.one_element();
        for _ in 0..k {
            out = self.multiply(&out, a);
        }
        out
    }

    /// Deterministic ordered monomial basis of the degree-`degree` component
    /// (lexicographic in generator order, then exponent).
    pub fn basis_in_degree(&self, degree: i64) -> Result<Vec<Monomial>> {
        self.check_enumerable()?;
        // Contribution interval of generator suffixes, for pruning.
        let n = self.generators.len();
        let mut suffix_lo = vec![0i64; n + 1];
        let mut suffix_hi = vec![0i64; n + 1];
        const INF: i64 = i64::MAX / 4;
        for i in (0..n).rev() {
            let g = &self.generators[i];
            let (lo, hi) = match g.bound {
                Some(b) => {
                    let t = b as i64 * g.degree;
                    (t.min(0), t.max(0))
                }
                None => {
                    if g.degree > 0 {
                        (0, INF)
                    } else {
                        (-INF, 0)
                    }
                }
            };
            suffix_lo[i] = (suffix_lo[i + 1] + lo).max(-INF);
            suffix_hi[i] = (suffix_hi[i + 1] + hi).min(INF);
        }
        let mut out = Vec::new();
        let mut exps = vec![0u32; n];
        self.enumerate_rec(degree, 0, &mut exps, &suffix_lo, &suffix_hi, &mut out);
        out.retain(|m| self.is_basis_monomial(m));
        out.sort();
        Ok(out)
    }

    fn check_enumerable(&self) -> Result<()> {
        let mut pos = false;
        let mut neg = false;
        for g in &self.generators {
            if g.bound.is_none() {
                if g.degree == 0 {
                    return Err(Error::InfiniteBasis(format!(
                        "polynomial generator `{}` has degree 0",
                        g.name
                    )));
                }
                if g.degree > 0 {
                    pos = true;
                } else {
                    neg = true;
                }
            }
        }
        if pos && neg {
            return Err(Error::InfiniteBasis(
                "polynomial generators of opposite degree signs".into(),
            ));
        }
        Ok(())
    }

    fn enumerate_rec(
        &self,
        remaining: i64,
        idx: usize,
        exps: &mut Vec<u32>,
        suffix_lo: &[i64],
        suffix_hi: &[i64],
        out: &mut Vec<Monomial>,
    ) {
        if idx == self.generators.len() {
            if remaining == 0 {
                out.push(Monomial(exps.clone()));
            }
            return;
        }
        let g = &self.generators[idx];
        let mut e: u32 = 0;
        loop {
            if let Some(b) = g.bound {
                if e > b {
                    break;
                }
            }
            let rest = remaining - e as i64 * g.degree;
            let feasible = suffix_lo[idx + 1] <= rest && rest <= suffix_hi[idx + 1];
            if feasible {
                exps[idx] = e;
                self.enumerate_rec(rest, idx + 1, exps, suffix_lo, suffix_hi, out);
                exps[idx] = 0;
            } else {
                // `rest` moves monotonically in e; once it leaves the window
                // on the far side it can never come back.
                match g.degree.cmp(&0) {
                    std::cmp::Ordering::Greater if rest < suffix_lo[idx + 1] => break,
                    std::cmp::Ordering::Less if rest > suffix_hi[idx + 1] => break,
                    std::cmp::Ordering::Equal => break,
                    _ => {}
                }
            }
            e += 1;
        }
    }

    /// Hilbert series on a window.
    pub fn hilbert_series(&self, window: Window) -> Result<DimensionSeries> {
        let mut s = DimensionSeries::new();
        for d in window.iter() {
            let n = self.basis_in_degree(d)?.len();
            s.add(d, n as u64);
        }
        Ok(s)
    }

    /// Basis monomials grouped by bidegree, for presentations whose
    /// generators all carry bidegrees. Columns are enumerated for `p ≤
    /// p_max`; a `q_window` is required when some column-0 generator is
    /// unbounded (otherwise a column would be infinite).
    pub fn bigraded_basis(
        &self,
        p_max: u32,
        q_window: Option<Window>,
    ) -> Result<BTreeMap<Bidegree, Vec<Monomial>>> {
        let n = self.generators.len();
        // First pass: caps forced by bounds or by the column budget; flag
        // column-0 polynomial generators for the second pass.
        let mut caps: Vec<Option<u32>> = Vec::with_capacity(n);
        let mut col0_sign = 0i64;
        for g in &self.generators {
            let b = g.bidegree.ok_or_else(|| {
                Error::InvalidInput(format!("generator `{}` carries no bidegree", g.name))
            })?;
            match g.bound {
                Some(bd) => caps.push(Some(bd)),
                None if b.p > 0 => caps.push(Some(p_max / b.p)),
                None => {
                    if b.q == 0 {
                        return Err(Error::InfiniteBasis(format!(
                            "generator `{}` has bidegree (0,0)",
                            g.name
                        )));
                    }
                    let sign = b.q.signum();
                    if col0_sign != 0 && sign != col0_sign {
                        return Err(Error::InfiniteBasis(
                            "column-0 polynomial generators of opposite degree signs".into(),
                        ));
                    }
                    col0_sign = sign;
                    caps.push(None);
                }
            }
        }
        // Second pass: a column-0 polynomial generator is capped by the
        // q-window once the opposite-sign slack of the capped generators is
        // accounted for.
        if caps.iter().any(Option::is_none) {
            let w = q_window.ok_or_else(|| {
                Error::InfiniteBasis(
                    "column-0 polynomial generators need a q-window".into(),
                )
            })?;
            let mut neg_slack = 0i64;
            let mut pos_slack = 0i64;
            for (g, cap) in self.generators.iter().zip(&caps) {
                if let Some(c) = cap {
                    let contrib = g.bidegree.unwrap().q * *c as i64;
                    if contrib < 0 {
                        neg_slack += -contrib;
                    } else {
                        pos_slack += contrib;
                    }
                }
            }
            for (g, cap) in self.generators.iter().zip(caps.iter_mut()) {
                if cap.is_none() {
                    let qg = g.bidegree.unwrap().q;
                    let room = if qg > 0 {
                        (w.hi + neg_slack).max(0) / qg
                    } else {
                        (pos_slack - w.lo).max(0) / -qg
                    };
                    *cap = Some(room as u32);
                }
            }
        }
        let caps: Vec<u32> = caps.into_iter().map(Option::unwrap).collect();
        let mut out: BTreeMap<Bidegree, Vec<Monomial>> = BTreeMap::new();
        let mut exps = vec![0u32; n];
        loop {
            let m = Monomial(exps.clone());
            if self.is_basis_monomial(&m) {
                let b = self.monomial_bidegree(&m).unwrap();
                if b.p <= p_max && q_window.map_or(true, |w| w.contains(b.q)) {
                    out.entry(b).or_default().push(m);
                }
            }
            // odometer
            let mut i = 0;
            loop {
                if i == n {
                    for v in out.values_mut() {
                        v.sort();
                    }
                    return Ok(out);
                }
                if exps[i] < caps[i] {
                    exps[i] += 1;
                    break;
                }
                exps[i] = 0;
                i += 1;
            }
        }
    }

    /// Tensor product: concatenated generators, inherited relations.
    pub fn tensor(&self, other: &AlgebraPresentation) -> Result<AlgebraPresentation> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        let mut gens = self.generators.clone();
        gens.extend(other.generators.clone());
        let n1 = self.generators.len();
        let n2 = other.generators.len();
        let pad_left = |m: &Monomial| {
            let mut e = m.0.clone();
            e.extend(std::iter::repeat(0).take(n2));
            Monomial(e)
        };
        let pad_right = |m: &Monomial| {
            let mut e = vec![0; n1];
            e.extend(m.0.iter().copied());
            Monomial(e)
        };
        let mut relations: Vec<Relation> = self
            .relations
            .iter()
            .map(|r| Relation {
                lead: pad_left(&r.lead),
                rhs: Element {
                    terms: r
                        .rhs
                        .terms
                        .iter()
                        .map(|(m, c)| (pad_left(m), c.clone()))
                        .collect(),
                },
            })
            .collect();
        relations.extend(other.relations.iter().map(|r| Relation {
            lead: pad_right(&r.lead),
            rhs: Element {
                terms: r
                    .rhs
                    .terms
                    .iter()
                    .map(|(m, c)| (pad_right(m), c.clone()))
                    .collect(),
            },
        }));
        let kind = match (self.kind, other.kind) {
            (AlgebraKind::Polynomial, AlgebraKind::Polynomial) => AlgebraKind::Polynomial,
            (AlgebraKind::Exterior, AlgebraKind::Exterior) => AlgebraKind::Exterior,
            _ => AlgebraKind::Tensor,
        };
        AlgebraPresentation::new(self.field, gens, relations, kind)
    }

    /// Gorenstein dimension `-Σ (deg x_i - 1)` of a polynomial algebra on
    /// even-degree generators.
    pub fn gorenstein_dimension(&self) -> Result<i64> {
        if !self.is_polynomial() {
            return Err(Error::NotPolynomial(self.describe()));
        }
        if self.generators.iter().any(|g| g.is_odd()) {
            return Err(Error::NotPolynomial(format!(
                "odd-degree generator in {}",
                self.describe()
            )));
        }
        Ok(-self
            .generators
            .iter()
            .map(|g| g.degree - 1)
            .sum::<i64>())
    }

    pub fn format_monomial(&self, m: &Monomial) -> String {
        if m.is_one() {
            return "1".into();
        }
        let mut parts = Vec::new();
        for (e, g) in m.0.iter().zip(&self.generators) {
            match e {
                0 => {}
                1 => parts.push(g.name.clone()),
                _ => parts.push(format!("{}^{}", g.name, e)),
            }
        }
        parts.join("·")
    }

    pub fn format_element(&self, e: &Element) -> String {
        if e.is_zero() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (m, c) in &e.terms {
            let ms = self.format_monomial(m);
            if c.is_one() {
                parts.push(ms);
            } else if ms == "1" {
                parts.push(c.to_string());
            } else {
                parts.push(format!("{c}·{ms}"));
            }
        }
        parts.join(" + ")
    }
}

impl fmt::Display for AlgebraPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.generators.is_empty() {
            return write!(f, "{}", self.field);
        }
        let poly: Vec<String> = self
            .generators
            .iter()
            .filter(|g| g.bound.is_none())
            .map(|g| g.name.clone())
            .collect();
        let ext: Vec<String> = self
            .generators
            .iter()
            .filter(|g| g.bound == Some(1))
            .map(|g| g.name.clone())
            .collect();
        let trunc: Vec<&GeneratorSpec> = self
            .generators
            .iter()
            .filter(|g| matches!(g.bound, Some(b) if b > 1))
            .collect();
        let mut factors = Vec::new();
        if !poly.is_empty() {
            factors.push(format!("{}[{}]", self.field, poly.join(",")));
        }
        if !ext.is_empty() {
            factors.push(format!("Λ({})", ext.join(",")));
        }
        for g in &trunc {
            factors.push(format!(
                "{}[{}]/({}^{})",
                self.field,
                g.name,
                g.name,
                g.bound.unwrap() + 1
            ));
        }
        write!(f, "{}", factors.join(" ⊗ "))?;
        if !self.relations.is_empty() {
            let rels: Vec<String> = self
                .relations
                .iter()
                .map(|r| {
                    if r.rhs.is_zero() {
                        self.format_monomial(&r.lead)
                    } else {
                        format!(
                            "{} - {}",
                            self.format_monomial(&r.lead),
                            self.format_element(&r.rhs)
                        )
                    }
                })
                .collect();
            write!(f, " / ({})", rels.join(", "))?;
        }
        Ok(())
    }
}

/// A degree-preserving algebra map given by generator images; relations of
/// the source are checked to die in the target at construction time.
#[derive(Debug, Clone, PartialEq)]
pub struct AlgebraMorphism {
    pub source: AlgebraPresentation,
    pub target: AlgebraPresentation,
    pub images: Vec<Element>,
}

impl AlgebraMorphism {
    pub fn new(
        source: AlgebraPresentation,
        target: AlgebraPresentation,
        images: Vec<Element>,
    ) -> Result<Self> {
        if source.field != target.field {
            return Err(Error::FieldMismatch);
        }
        if images.len() != source.generators.len() {
            return Err(Error::InvalidInput(
                "one image per source generator required".into(),
            ));
        }
        let m = AlgebraMorphism {
            source,
            target,
            images,
        };
        for (i, g) in m.source.generators.iter().enumerate() {
            let img = m.target.normalize(&m.images[i]);
            for mon in img.terms.keys() {
                if m.target.monomial_degree(mon) != g.degree {
                    return Err(Error::DegreeMismatch(g.name.clone()));
                }
            }
            // Exponent bounds are relations too.
            if let Some(b) = g.bound {
                if !m.target.power(&img, b + 1).is_zero() {
                    return Err(Error::RelationNotPreserved(format!(
                        "{}^{}",
                        g.name,
                        b + 1
                    )));
                }
            }
        }
        for r in &m.source.relations {
            let lhs = m.apply_monomial(&r.lead);
            let rhs = m.apply(&r.rhs);
            if !lhs.minus(&rhs).is_zero() {
                return Err(Error::RelationNotPreserved(
                    m.source.format_monomial(&r.lead),
                ));
            }
        }
        Ok(m)
    }

    pub fn identity(alg: &AlgebraPresentation) -> Self {
        let images = (0..alg.generators.len())
            .map(|i| {
                Element::term(
                    Monomial::generator(alg.generators.len(), i),
                    alg.field.one(),
                )
            })
            .collect();
        AlgebraMorphism {
            source: alg.clone(),
            target: alg.clone(),
            images,
        }
    }

    fn apply_monomial(&self, m: &Monomial) -> Element {
        let mut out = self.target.one_element();
        for (i, e) in m.0.iter().enumerate() {
            if *e > 0 {
                let p = self.target.power(&self.images[i], *e);
                out = self.target.multiply(&out, &p);
            }
        }
        out
    }

    pub fn apply(&self, e: &Element) -> Element {
        let mut out = Element::zero();
        for (m, c) in &e.terms {
            out = out.plus(&self.apply_monomial(m).scale(c));
        }
        self.target.normalize(&out)
    }
}

/// A module given by a ring map `algebra -> coefficients`; the action is
/// multiplication through the map on both sides (the symmetric-bimodule
/// situation every pipeline here needs).
#[derive(Debug, Clone, PartialEq)]
pub struct ModuleSpec {
    pub algebra: AlgebraPresentation,
    pub coefficients: AlgebraPresentation,
    pub action: AlgebraMorphism,
}

impl ModuleSpec {
    pub fn new(
        algebra: AlgebraPresentation,
        coefficients: AlgebraPresentation,
        action: AlgebraMorphism,
    ) -> Result<Self> {
        if action.source != algebra || action.target != coefficients {
            return Err(Error::InvalidInput(
                "module action must map the acting ring into the coefficients".into(),
            ));
        }
        Ok(ModuleSpec {
            algebra,
            coefficients,
            action,
        })
    }

    /// The algebra acting on itself by multiplication.
    pub fn self_module(alg: &AlgebraPresentation) -> Self {
        ModuleSpec {
            algebra: alg.clone(),
            coefficients: alg.clone(),
            action: AlgebraMorphism::identity(alg),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.algebra == self.coefficients && *self == Self::self_module(&self.algebra)
    }

    pub fn act_left(&self, a: &Element, w: &Element) -> Element {
        self.coefficients.multiply(&self.action.apply(a), w)
    }

    pub fn act_right(&self, w: &Element, a: &Element) -> Element {
        self.coefficients.multiply(w, &self.action.apply(a))
    }
}
