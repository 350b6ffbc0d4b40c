//! Multivariate polynomials over Q and F_p and Buchberger's algorithm with
//! the Gebauer-Moeller criteria and sugar selection.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{JordanError, Result};
use crate::field::{FieldSpec, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MonomialOrder {
    Lex,
    DegRevLex,
}

impl MonomialOrder {
    pub fn parse(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "lex" => Ok(MonomialOrder::Lex),
            "degrevlex" | "grevlex" | "drl" => Ok(MonomialOrder::DegRevLex),
            other => Err(JordanError::Parse { line: 0, message: format!("unknown monomial order `{other}`") }),
        }
    }
}

/// Polynomial ring: coefficient field, variable names (first is largest)
/// and monomial order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Ring {
    pub field: FieldSpec,
    pub vars: Vec<String>,
    pub order: MonomialOrder,
}

impl Ring {
    pub fn new(field: FieldSpec, vars: Vec<String>, order: MonomialOrder) -> Arc<Ring> {
        Arc::new(Ring { field, vars, order })
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self.order {
            MonomialOrder::Lex => a.exps.cmp(&b.exps),
            MonomialOrder::DegRevLex => a.deg.cmp(&b.deg).then_with(|| {
                for (x, y) in a.exps.iter().zip(b.exps.iter()).rev() {
                    if x != y {
                        return y.cmp(x);
                    }
                }
                Ordering::Equal
            }),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: Box<[u16]>,
    deg: u32,
}

impl Monomial {
    pub fn one(n: usize) -> Self {
        Monomial { exps: vec![0; n].into_boxed_slice(), deg: 0 }
    }

    pub fn from_exponents(exps: Vec<u16>) -> Self {
        let deg = exps.iter().map(|&e| e as u32).sum();
        Monomial { exps: exps.into_boxed_slice(), deg }
    }

    pub fn var(n: usize, i: usize) -> Self {
        let mut e = vec![0; n];
        e[i] = 1;
        Monomial::from_exponents(e)
    }

    pub fn exponents(&self) -> &[u16] {
        &self.exps
    }

    pub fn degree(&self) -> u32 {
        self.deg
    }

    pub fn is_one(&self) -> bool {
        self.deg == 0
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let exps: Vec<u16> = self.exps.iter().zip(other.exps.iter()).map(|(a, b)| a + b).collect();
        Monomial { exps: exps.into_boxed_slice(), deg: self.deg + other.deg }
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.deg <= other.deg && self.exps.iter().zip(other.exps.iter()).all(|(a, b)| a <= b)
    }

    /// `self / other`, assuming `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Monomial {
        let exps: Vec<u16> = self.exps.iter().zip(other.exps.iter()).map(|(a, b)| a - b).collect();
        Monomial { exps: exps.into_boxed_slice(), deg: self.deg - other.deg }
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let exps: Vec<u16> = self.exps.iter().zip(other.exps.iter()).map(|(a, b)| *a.max(b)).collect();
        Monomial::from_exponents(exps)
    }

    pub fn coprime(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(other.exps.iter()).all(|(a, b)| *a == 0 || *b == 0)
    }

    fn render(&self, vars: &[String]) -> String {
        let parts: Vec<String> = self
            .exps
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| if e == 1 { vars[i].clone() } else { format!("{}^{}", vars[i], e) })
            .collect();
        parts.join("*")
    }
}

/// Terms are kept sorted by decreasing monomial, with no zero coefficients.
#[derive(Clone, Debug)]
pub struct Polynomial {
    ring: Arc<Ring>,
    terms: Vec<(Monomial, Scalar)>,
    sugar: u32,
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring && self.terms == other.terms
    }
}

impl Eq for Polynomial {}

impl Polynomial {
    pub fn zero(ring: &Arc<Ring>) -> Self {
        Polynomial { ring: ring.clone(), terms: Vec::new(), sugar: 0 }
    }

    pub fn constant(ring: &Arc<Ring>, c: Scalar) -> Self {
        Polynomial::from_terms(ring, vec![(Monomial::one(ring.nvars()), c)])
    }

    pub fn var(ring: &Arc<Ring>, i: usize) -> Self {
        Polynomial::from_terms(ring, vec![(Monomial::var(ring.nvars(), i), ring.field.one())])
    }

    /// Collects like terms and sorts.
    pub fn from_terms(ring: &Arc<Ring>, terms: Vec<(Monomial, Scalar)>) -> Self {
        let mut terms = terms;
        terms.sort_by(|a, b| ring.cmp(&b.0, &a.0));
        let mut out: Vec<(Monomial, Scalar)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            match out.last_mut() {
                Some((lm, lc)) if *lm == m => *lc = &*lc + &c,
                _ => out.push((m, c)),
            }
        }
        out.retain(|(_, c)| !c.is_zero());
        let sugar = out.iter().map(|(m, _)| m.deg).max().unwrap_or(0);
        Polynomial { ring: ring.clone(), terms: out, sugar }
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn terms(&self) -> &[(Monomial, Scalar)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|t| &t.0)
    }

    pub fn leading_coefficient(&self) -> Option<&Scalar> {
        self.terms.first().map(|t| &t.1)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.iter().map(|(m, _)| m.deg).max().unwrap_or(0)
    }

    pub fn monic(&self) -> Polynomial {
        match self.leading_coefficient() {
            None => self.clone(),
            Some(lc) if lc.is_one() => self.clone(),
            Some(lc) => {
                let inv = lc.inv().expect("nonzero leading coefficient");
                self.scale(&inv)
            }
        }
    }

    pub fn scale(&self, c: &Scalar) -> Polynomial {
        if c.is_zero() {
            return Polynomial { sugar: self.sugar, ..Polynomial::zero(&self.ring) };
        }
        let terms = self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect();
        Polynomial { ring: self.ring.clone(), terms, sugar: self.sugar }
    }

    /// `self - c * m * g`, merging the sorted term lists.
    fn sub_scaled(&self, c: &Scalar, m: &Monomial, g: &Polynomial) -> Polynomial {
        let ring = &self.ring;
        let mut out = Vec::with_capacity(self.terms.len() + g.terms.len());
        let mut a = self.terms.iter().peekable();
        let mut b = g.terms.iter().map(|(gm, gc)| (gm.mul(m), gc * c)).peekable();
        loop {
            let ord = match (a.peek(), b.peek()) {
                (None, None) => break,
                (Some(_), None) => Ordering::Greater,
                (None, Some(_)) => Ordering::Less,
                (Some(x), Some(y)) => ring.cmp(&x.0, &y.0),
            };
            match ord {
                Ordering::Greater => out.push(a.next().expect("peeked").clone()),
                Ordering::Less => {
                    let (bm, bc) = b.next().expect("peeked");
                    out.push((bm, -bc));
                }
                Ordering::Equal => {
                    let (am, ac) = a.next().expect("peeked");
                    let (_, bc) = b.next().expect("peeked");
                    let d = ac - &bc;
                    if !d.is_zero() {
                        out.push((am.clone(), d));
                    }
                }
            }
        }
        let sugar = self.sugar.max(g.sugar + m.deg);
        Polynomial { ring: ring.clone(), terms: out, sugar }
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        self.sub_scaled(&-self.ring.field.one(), &Monomial::one(self.ring.nvars()), other)
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        self.sub_scaled(&self.ring.field.one(), &Monomial::one(self.ring.nvars()), other)
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        let mut terms = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                terms.push((m1.mul(m2), c1 * c2));
            }
        }
        Polynomial::from_terms(&self.ring, terms)
    }

    pub fn eval(&self, point: &[Scalar]) -> Scalar {
        let mut acc = self.ring.field.zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(m.exps.iter()) {
                if e > 0 {
                    t = &t * &x.pow(e as u64);
                }
            }
            acc = &acc + &t;
        }
        acc
    }

    /// Parses `3*a11^2*b - 1/2*a12 + 7`; every variable must belong to `ring`.
    pub fn parse(ring: &Arc<Ring>, text: &str) -> Result<Polynomial> {
        let err = |m: String| JordanError::Parse { line: 0, message: m };
        let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(err("empty polynomial".into()));
        }
        let mut pieces = Vec::new();
        let mut start = 0;
        for (k, ch) in s.char_indices() {
            if (ch == '+' || ch == '-') && k > start && !s[..k].ends_with('^') {
                pieces.push(&s[start..k]);
                start = k;
            }
        }
        pieces.push(&s[start..]);
        let n = ring.nvars();
        let mut terms = Vec::new();
        for piece in pieces {
            let (neg, body) = match piece.strip_prefix('-') {
                Some(b) => (true, b),
                None => (false, piece.strip_prefix('+').unwrap_or(piece)),
            };
            if body.is_empty() {
                return Err(err(format!("dangling sign in `{text}`")));
            }
            let mut coef = ring.field.one();
            let mut exps = vec![0u16; n];
            for factor in body.split('*') {
                if factor.is_empty() {
                    return Err(err(format!("empty factor in `{piece}`")));
                }
                if factor.starts_with(|c: char| c.is_ascii_digit()) {
                    coef = &coef * &ring.field.parse_scalar(factor)?;
                    continue;
                }
                let (name, e) = match factor.split_once('^') {
                    Some((v, e)) => (v, e.parse::<u16>().map_err(|_| err(format!("bad exponent in `{factor}`")))?),
                    None => (factor, 1),
                };
                let i = ring.var_index(name).ok_or_else(|| err(format!("unknown variable `{name}`")))?;
                exps[i] += e;
            }
            if neg {
                coef = -coef;
            }
            terms.push((Monomial::from_exponents(exps), coef));
        }
        Ok(Polynomial::from_terms(ring, terms))
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let s = c.to_string();
            let (neg, mag) = match s.strip_prefix('-') {
                Some(x) => (true, x.to_string()),
                None => (false, s),
            };
            if k == 0 {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            let mono = m.render(&self.ring.vars);
            match (mono.is_empty(), mag == "1") {
                (true, _) => f.write_str(&mag)?,
                (false, true) => f.write_str(&mono)?,
                (false, false) => write!(f, "{mag}*{mono}")?,
            }
        }
        Ok(())
    }
}

impl Serialize for Polynomial {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

fn first_divisor<'a>(m: &Monomial, g: &'a [Polynomial]) -> Option<(usize, &'a Polynomial)> {
    g.iter().enumerate().find(|(_, p)| p.leading_monomial().is_some_and(|lm| lm.divides(m)))
}

/// Multivariate division: `f = sum q_i g_i + r` with no term of `r`
/// divisible by a leading monomial of `g`.
pub fn divide(f: &Polynomial, g: &[Polynomial]) -> (Vec<Polynomial>, Polynomial) {
    let ring = f.ring.clone();
    let mut quotients: Vec<Vec<(Monomial, Scalar)>> = vec![Vec::new(); g.len()];
    let mut p = f.clone();
    let mut rem = Vec::new();
    while let Some((m, c)) = p.terms.first().cloned() {
        match first_divisor(&m, g) {
            Some((i, gi)) => {
                let t = m.div(gi.leading_monomial().expect("nonzero"));
                let coef = c.checked_div(gi.leading_coefficient().expect("nonzero")).expect("nonzero");
                p = p.sub_scaled(&coef, &t, gi);
                quotients[i].push((t, coef));
            }
            None => {
                rem.push((m, c));
                p.terms.remove(0);
            }
        }
    }
    let quotients = quotients.into_iter().map(|t| Polynomial::from_terms(&ring, t)).collect();
    (quotients, Polynomial::from_terms(&ring, rem))
}

/// Remainder of `f` on division by `g`.
pub fn reduce(f: &Polynomial, g: &[Polynomial]) -> Polynomial {
    let mut p = f.clone();
    let mut rem: Vec<(Monomial, Scalar)> = Vec::new();
    let sugar = f.sugar;
    let mut max_sugar = sugar;
    while let Some(lead) = p.terms.first() {
        let m = &lead.0;
        match first_divisor(m, g) {
            Some((_, gi)) => {
                let t = m.div(gi.leading_monomial().expect("nonzero"));
                let coef = lead.1.checked_div(gi.leading_coefficient().expect("nonzero")).expect("nonzero");
                p = p.sub_scaled(&coef, &t, gi);
                max_sugar = max_sugar.max(p.sugar);
            }
            None => {
                let mut rest = std::mem::take(&mut p.terms);
                rem.push(rest.remove(0));
                p.terms = rest;
            }
        }
    }
    Polynomial { ring: f.ring.clone(), terms: rem, sugar: max_sugar }
}

/// `S(f, g) = (L / lt f) f - (L / lt g) g` with `L` the lcm of leading monomials.
pub fn s_polynomial(f: &Polynomial, g: &Polynomial) -> Polynomial {
    let (Some(lf), Some(lg)) = (f.leading_monomial(), g.leading_monomial()) else {
        return Polynomial::zero(&f.ring);
    };
    let l = lf.lcm(lg);
    let cf = f.leading_coefficient().expect("nonzero").inv().expect("nonzero");
    let cg = g.leading_coefficient().expect("nonzero").inv().expect("nonzero");
    let left = Polynomial::zero(&f.ring).sub_scaled(&-cf, &l.div(lf), f);
    left.sub_scaled(&cg, &l.div(lg), g)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct GbLimits {
    /// S-pairs reduced.
    pub max_pairs: usize,
    /// Terms in any intermediate polynomial.
    pub max_terms: usize,
    /// Polynomials in the working basis.
    pub max_basis: usize,
}

impl Default for GbLimits {
    fn default() -> Self {
        GbLimits { max_pairs: 200_000, max_terms: 100_000, max_basis: 20_000 }
    }
}

impl GbLimits {
    /// Defaults overridden by `JORDAN_LIMITS`, e.g. `pairs=1000,terms=5000,basis=200`.
    pub fn from_env() -> Result<Self> {
        let mut l = GbLimits::default();
        if let Ok(spec) = std::env::var("JORDAN_LIMITS") {
            l = l.with_overrides(&spec)?;
        }
        Ok(l)
    }

    pub fn with_overrides(mut self, spec: &str) -> Result<Self> {
        for item in spec.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (k, v) = item
                .split_once('=')
                .ok_or_else(|| JordanError::Parse { line: 0, message: format!("bad limit `{item}`") })?;
            let v: usize =
                v.trim().parse().map_err(|_| JordanError::Parse { line: 0, message: format!("bad limit `{item}`") })?;
            match k.trim() {
                "pairs" => self.max_pairs = v,
                "terms" => self.max_terms = v,
                "basis" => self.max_basis = v,
                other => return Err(JordanError::Parse { line: 0, message: format!("unknown limit `{other}`") }),
            }
        }
        Ok(self)
    }
}

#[derive(Clone, Debug)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
    sugar: u32,
}

struct Builder {
    ring: Arc<Ring>,
    polys: Vec<Polynomial>,
    active: Vec<bool>,
    pairs: Vec<Pair>,
}

impl Builder {
    fn lm(&self, i: usize) -> &Monomial {
        self.polys[i].leading_monomial().expect("nonzero basis element")
    }

    fn pair_sugar(&self, i: usize, j: usize, lcm: &Monomial) -> u32 {
        let si = self.polys[i].sugar + lcm.deg - self.lm(i).deg;
        let sj = self.polys[j].sugar + lcm.deg - self.lm(j).deg;
        si.max(sj)
    }

    /// Gebauer-Moeller update with a new basis element.
    fn update(&mut self, h: Polynomial) {
        let hi = self.polys.len();
        let lh = h.leading_monomial().expect("nonzero").clone();
        self.polys.push(h);
        self.active.push(true);
        let olds: Vec<usize> = (0..hi).filter(|&g| self.active[g]).collect();
        let cands: Vec<(usize, Monomial, bool)> = olds
            .iter()
            .map(|&g| {
                let lg = self.lm(g);
                (g, lh.lcm(lg), lh.coprime(lg))
            })
            .collect();
        // Chain criterion among the new pairs.
        let mut keep = Vec::new();
        for (k, (g, l, coprime)) in cands.iter().enumerate() {
            let dominated =
                |(k2, (_, l2, _)): (usize, &(usize, Monomial, bool))| k2 != k && l2.divides(l) && (l2 != l || k2 < k);
            if *coprime || !cands.iter().enumerate().any(dominated) {
                keep.push((*g, l.clone(), *coprime));
            }
        }
        // Equal lcms: one survivor each (the earliest), and none if any of
        // them is coprime.
        let mut survivors: Vec<(usize, Monomial)> = Vec::new();
        for (g, l, coprime) in &keep {
            if *coprime {
                continue;
            }
            if keep.iter().any(|(_, l2, c2)| *c2 && l2 == l) {
                continue;
            }
            if survivors.iter().any(|(_, l2)| l2 == l) {
                continue;
            }
            survivors.push((*g, l.clone()));
        }
        // Old pairs made redundant by the new leading monomial.
        let polys = &self.polys;
        let lmo = |i: usize| polys[i].leading_monomial().expect("nonzero");
        self.pairs.retain(|p| !(lh.divides(&p.lcm) && lmo(p.i).lcm(&lh) != p.lcm && lmo(p.j).lcm(&lh) != p.lcm));
        for (g, l) in survivors {
            let sugar = self.pair_sugar(g, hi, &l);
            self.pairs.push(Pair { i: g, j: hi, lcm: l, sugar });
        }
        for g in olds {
            if lh.divides(self.lm(g)) {
                self.active[g] = false;
            }
        }
    }

    fn next_pair(&mut self) -> Option<Pair> {
        let ring = &self.ring;
        let best = (0..self.pairs.len()).min_by(|&a, &b| {
            let (pa, pb) = (&self.pairs[a], &self.pairs[b]);
            pa.sugar
                .cmp(&pb.sugar)
                .then_with(|| ring.cmp(&pa.lcm, &pb.lcm))
                .then_with(|| (pa.j, pa.i).cmp(&(pb.j, pb.i)))
        })?;
        Some(self.pairs.swap_remove(best))
    }

    fn active_basis(&self) -> Vec<Polynomial> {
        (0..self.polys.len()).filter(|&i| self.active[i]).map(|i| self.polys[i].clone()).collect()
    }
}

/// Reduced Groebner basis of the ideal generated by `gens`, sorted by
/// increasing leading monomial. All generators must share one ring.
pub fn buchberger(gens: &[Polynomial], limits: &GbLimits) -> Result<Vec<Polynomial>> {
    let Some(first) = gens.first() else {
        return Ok(Vec::new());
    };
    let ring = first.ring.clone();
    if gens.iter().any(|g| g.ring != ring) {
        return Err(JordanError::Parse { line: 0, message: "generators from different rings".into() });
    }
    let one = || vec![Polynomial::constant(&ring, ring.field.one())];
    let mut b = Builder { ring: ring.clone(), polys: Vec::new(), active: Vec::new(), pairs: Vec::new() };
    let mut sorted: Vec<Polynomial> = gens.iter().filter(|g| !g.is_zero()).cloned().collect();
    sorted.sort_by(|x, y| ring.cmp(x.leading_monomial().expect("nonzero"), y.leading_monomial().expect("nonzero")));
    for g in sorted {
        let h = reduce(&g, &b.active_basis());
        if h.is_zero() {
            continue;
        }
        if h.is_constant() {
            return Ok(one());
        }
        b.update(h.monic());
    }
    let mut processed = 0usize;
    while let Some(pair) = b.next_pair() {
        processed += 1;
        if processed > limits.max_pairs {
            return Err(JordanError::ResourceExceeded(format!("more than {} S-pairs", limits.max_pairs)));
        }
        let s = s_polynomial(&b.polys[pair.i], &b.polys[pair.j]);
        let s = Polynomial { sugar: pair.sugar, ..s };
        let basis = b.active_basis();
        let h = reduce(&s, &basis);
        if h.len() > limits.max_terms {
            return Err(JordanError::ResourceExceeded(format!("polynomial with more than {} terms", limits.max_terms)));
        }
        if h.is_zero() {
            continue;
        }
        if h.is_constant() {
            return Ok(one());
        }
        b.update(h.monic());
        if b.polys.len() > limits.max_basis {
            return Err(JordanError::ResourceExceeded(format!("basis larger than {}", limits.max_basis)));
        }
    }
    Ok(reduced_basis(b.active_basis()))
}

/// Inter-reduces a Groebner basis into the unique reduced one.
fn reduced_basis(g: Vec<Polynomial>) -> Vec<Polynomial> {
    let mut minimal: Vec<Polynomial> = Vec::new();
    for (k, p) in g.iter().enumerate() {
        let lm = p.leading_monomial().expect("nonzero");
        let redundant = g.iter().enumerate().any(|(k2, q)| {
            let lq = q.leading_monomial().expect("nonzero");
            k2 != k && lq.divides(lm) && (lq != lm || k2 < k)
        });
        if !redundant {
            minimal.push(p.monic());
        }
    }
    let mut out = Vec::with_capacity(minimal.len());
    for k in 0..minimal.len() {
        let others: Vec<Polynomial> =
            minimal.iter().enumerate().filter(|&(k2, _)| k2 != k).map(|(_, p)| p.clone()).collect();
        let head = Polynomial::from_terms(&minimal[k].ring, vec![minimal[k].terms[0].clone()]);
        let tail = Polynomial { terms: minimal[k].terms[1..].to_vec(), ..minimal[k].clone() };
        out.push(head.add(&reduce(&tail, &others)).monic());
    }
    if let Some(ring) = out.first().map(|p| p.ring.clone()) {
        out.sort_by(|x, y| ring.cmp(x.leading_monomial().expect("nonzero"), y.leading_monomial().expect("nonzero")));
    }
    out
}

/// Whether a Groebner basis generates the unit ideal.
pub fn contains_one(g: &[Polynomial]) -> bool {
    g.iter().any(Polynomial::is_constant)
}

/// Buchberger's criterion: every S-polynomial reduces to zero.
pub fn is_groebner_basis(g: &[Polynomial]) -> bool {
    for i in 0..g.len() {
        for j in i + 1..g.len() {
            if !reduce(&s_polynomial(&g[i], &g[j]), g).is_zero() {
                return false;
            }
        }
    }
    true
}

/// A generator list read from text: `field`, `vars` and optional `order`
/// header lines followed by one polynomial per line; `#` starts a comment.
pub fn parse_system(text: &str) -> Result<(Arc<Ring>, Vec<Polynomial>)> {
    let mut field = None;
    let mut vars = None;
    let mut order = MonomialOrder::DegRevLex;
    let mut ring: Option<Arc<Ring>> = None;
    let mut polys = Vec::new();
    for (ln, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let at = |e: JordanError| match e {
            JordanError::Parse { message, .. } => JordanError::Parse { line: ln + 1, message },
            other => other,
        };
        if let Some(rest) = line.strip_prefix("field ") {
            field = Some(FieldSpec::parse(rest).map_err(at)?);
        } else if let Some(rest) = line.strip_prefix("vars ") {
            vars = Some(rest.split([' ', ',']).filter(|s| !s.is_empty()).map(String::from).collect::<Vec<_>>());
        } else if let Some(rest) = line.strip_prefix("order ") {
            order = MonomialOrder::parse(rest).map_err(at)?;
        } else {
            let r = match &ring {
                Some(r) => r.clone(),
                None => {
                    let (Some(f), Some(v)) = (field, vars.clone()) else {
                        return Err(JordanError::Parse { line: ln + 1, message: "missing field/vars header".into() });
                    };
                    let r = Ring::new(f, v, order);
                    ring = Some(r.clone());
                    r
                }
            };
            polys.push(Polynomial::parse(&r, line).map_err(at)?);
        }
    }
    let ring = match ring {
        Some(r) => r,
        None => {
            let (Some(f), Some(v)) = (field, vars) else {
                return Err(JordanError::Parse { line: 0, message: "missing field/vars header".into() });
            };
            Ring::new(f, v, order)
        }
    };
    Ok((ring, polys))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring(order: MonomialOrder, vars: &[&str]) -> Arc<Ring> {
        Ring::new(FieldSpec::Rationals, vars.iter().map(|s| s.to_string()).collect(), order)
    }

    fn p(r: &Arc<Ring>, s: &str) -> Polynomial {
        Polynomial::parse(r, s).unwrap()
    }

    #[test]
    fn parse_and_display() {
        let r = ring(MonomialOrder::DegRevLex, &["a11", "a12", "b"]);
        let f = p(&r, "3*a11^2*b - 1/2*a12 + 7 - a12*1/2");
        assert_eq!(f.to_string(), "3*a11^2*b - a12 + 7");
        assert_eq!(p(&r, &f.to_string()), f);
        assert!(Polynomial::parse(&r, "x + 1").is_err());
        assert!(p(&r, "a11 - a11").is_zero());
    }

    #[test]
    fn orders() {
        let lex = ring(MonomialOrder::Lex, &["x", "y", "z"]);
        assert_eq!(p(&lex, "y^5 + x").to_string(), "x + y^5");
        let drl = ring(MonomialOrder::DegRevLex, &["x", "y", "z"]);
        assert_eq!(p(&drl, "y^5 + x").to_string(), "y^5 + x");
        assert_eq!(p(&drl, "x*z + y^2").to_string(), "y^2 + x*z");
    }

    #[test]
    fn reductions() {
        let r = ring(MonomialOrder::Lex, &["x", "y"]);
        assert_eq!(reduce(&p(&r, "x^2"), &[p(&r, "x - 1")]), p(&r, "1"));
        let f = p(&r, "x*y - 1");
        assert_eq!(reduce(&f, &[]), f);
        assert!(reduce(&f, &[p(&r, "x^2 - 1"), p(&r, "x*y - 1")]).is_zero());
    }

    #[test]
    fn s_polynomials() {
        let r = ring(MonomialOrder::Lex, &["x", "y"]);
        let f = p(&r, "x^2 - 1");
        assert!(s_polynomial(&f, &f).is_zero());
        assert_eq!(s_polynomial(&f, &p(&r, "x*y - 1")), p(&r, "x - y"));
        let drl = ring(MonomialOrder::DegRevLex, &["x", "y"]);
        let (g, h) = (p(&drl, "x^2 + y"), p(&drl, "y^2 + x"));
        assert!(reduce(&s_polynomial(&g, &h), &[g.clone(), h.clone()]).is_zero());
    }

    #[test]
    fn small_bases() {
        let l = GbLimits::default();
        let r = ring(MonomialOrder::Lex, &["x", "y"]);
        let g = buchberger(&[p(&r, "x"), p(&r, "x - 1")], &l).unwrap();
        assert_eq!(g, vec![p(&r, "1")]);
        assert!(contains_one(&g));
        let g = buchberger(&[p(&r, "x - 1")], &l).unwrap();
        assert_eq!(g, vec![p(&r, "x - 1")]);
        assert!(!contains_one(&g));
        let g = buchberger(&[p(&r, "x^2 - y"), p(&r, "y^2 - x")], &l).unwrap();
        assert!(g.contains(&p(&r, "y^4 - y")));
        assert!(is_groebner_basis(&g));
    }

    #[test]
    fn division_identity() {
        let r = ring(MonomialOrder::DegRevLex, &["x", "y", "z"]);
        let f = p(&r, "x^3*y + 2*x*y*z - z^2 + 5");
        let g = [p(&r, "x*y - z"), p(&r, "x^2 + y - 1"), p(&r, "z^2 - 2")];
        let (q, rem) = divide(&f, &g);
        let mut acc = rem.clone();
        for (qi, gi) in q.iter().zip(&g) {
            acc = acc.add(&qi.mul(gi));
        }
        assert_eq!(acc, f);
        assert_eq!(rem, reduce(&f, &g));
    }

    #[test]
    fn limits_are_reported() {
        let r = ring(MonomialOrder::Lex, &["x", "y"]);
        let tight = GbLimits { max_pairs: 0, ..GbLimits::default() };
        let out = buchberger(&[p(&r, "x*y - 1"), p(&r, "x^2 - y")], &tight);
        assert!(matches!(out, Err(JordanError::ResourceExceeded(_))));
        let l = GbLimits::default().with_overrides("pairs=5, terms=7").unwrap();
        assert_eq!((l.max_pairs, l.max_terms), (5, 7));
        assert!(GbLimits::default().with_overrides("bogus=1").is_err());
    }

    #[test]
    fn system_files() {
        let (r, ps) = parse_system("field F 7\nvars x y\norder lex\n# comment\nx^2 - y\ny - 3\n").unwrap();
        assert_eq!(r.order, MonomialOrder::Lex);
        assert_eq!(ps.len(), 2);
        let g = buchberger(&ps, &GbLimits::default()).unwrap();
        assert_eq!(g.iter().map(ToString::to_string).collect::<Vec<_>>(), vec!["y + 4", "x^2 + 4"]);
        assert!(parse_system("x + 1\n").is_err());
    }
}
