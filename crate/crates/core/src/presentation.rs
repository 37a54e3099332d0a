//! Generators and relations for `T(mu)` and the map `phi` into the
//! multiloop realization.
//!
//! Relation families are rows of [`FAMILIES`]: each row knows how to
//! instantiate itself over an exponent box, and the checker evaluates both
//! sides through `phi`. Families are numbered 1..19 in the order they are
//! listed in the source presentation (the four central-element items count
//! as separate families).

use crate::error::{Error, Result};
use crate::liealg::{GConfig, GElem, TwistKind};
use crate::scalar::Scalar;
use crate::toroidal::{LieElement, Mono, Toroidal};
use serde::Serialize;
use std::collections::{BTreeMap, HashMap};
use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum MryGenerator {
    /// `delta_r(s)`
    DeltaCentral { r: Vec<i64>, s: Vec<i64> },
    /// `alpha_i(k)`, `i = 0..=l`
    CartanGen { i: usize, k: Vec<i64> },
    /// `X(±alpha_i, k)`
    RootGen { sign: i8, i: usize, k: Vec<i64> },
    /// `d_j`, `j = 1..=n`
    Derivation(usize),
}

fn vec_str(v: &[i64]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(","))
}

impl fmt::Display for MryGenerator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MryGenerator::DeltaCentral { r, s } => write!(f, "delta_{}{}", vec_str(r), vec_str(s)),
            MryGenerator::CartanGen { i, k } => write!(f, "alpha_{}{}", i, vec_str(k)),
            MryGenerator::RootGen { sign, i, k } => {
                write!(f, "X({}alpha_{}, {})", if *sign > 0 { "+" } else { "-" }, i, vec_str(k))
            }
            MryGenerator::Derivation(j) => write!(f, "d_{}", j),
        }
    }
}

/// Formal expression in the generators.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Expr {
    Gen(MryGenerator),
    Bracket(Box<Expr>, Box<Expr>),
    Sum(Vec<(Scalar, Expr)>),
}

impl Expr {
    pub fn zero() -> Expr {
        Expr::Sum(Vec::new())
    }

    pub fn br(a: Expr, b: Expr) -> Expr {
        Expr::Bracket(Box::new(a), Box::new(b))
    }

    /// `ad a_1 ... ad a_k (b)`
    pub fn ad_chain(xs: Vec<Expr>, b: Expr) -> Expr {
        xs.into_iter().rev().fold(b, |acc, x| Expr::br(x, acc))
    }

    pub fn scaled(c: i64, e: Expr) -> Expr {
        Expr::Sum(vec![(Scalar::from_int(c), e)])
    }

    pub fn sum(terms: Vec<(i64, Expr)>) -> Expr {
        Expr::Sum(terms.into_iter().filter(|(c, _)| *c != 0).map(|(c, e)| (Scalar::from_int(c), e)).collect())
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Gen(g) => write!(f, "{}", g),
            Expr::Bracket(a, b) => write!(f, "[{}, {}]", a, b),
            Expr::Sum(t) if t.is_empty() => write!(f, "0"),
            Expr::Sum(t) => {
                for (n, (c, e)) in t.iter().enumerate() {
                    if n > 0 {
                        write!(f, " + ")?;
                    }
                    if c.is_one() {
                        write!(f, "{}", e)?;
                    } else {
                        write!(f, "({})*{}", c, e)?;
                    }
                }
                Ok(())
            }
        }
    }
}

#[derive(Clone, Debug)]
pub struct RelationInstance {
    /// 1-based family number
    pub family: usize,
    pub label: String,
    pub lhs: Expr,
    pub rhs: Expr,
}

/// Which extended Cartan matrix feeds the family coefficients and guards.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum CartanTable {
    /// the case list as printed
    Printed,
    /// entries read off from `[phi alpha_i(0), phi X(alpha_j, 0)]`
    Derived,
}

type Enumerator = fn(&Presentation, &[Vec<i64>]) -> Vec<RelationInstance>;

pub struct Family {
    pub id: usize,
    pub name: &'static str,
    pub statement: &'static str,
    enumerate: Enumerator,
}

pub const FAMILIES: [Family; 19] = [
    Family { id: 1, name: "delta-additive", statement: "delta_r(s) + delta_k(s) = delta_{r+k}(s)", enumerate: fam_delta_additive },
    Family { id: 2, name: "delta-diagonal", statement: "delta_r(r) = 0", enumerate: fam_delta_diagonal },
    Family { id: 3, name: "delta-central", statement: "[delta_r(s), delta_k(l)] = [delta_r(s), alpha_i(k)] = [delta_r(s), X(±alpha_i,k)] = 0", enumerate: fam_delta_central },
    Family { id: 4, name: "delta-derivation", statement: "[d_1, delta_r(s)] = 0, [d_j, delta_r(s)] = s_j delta_r(s)", enumerate: fam_delta_derivation },
    Family { id: 5, name: "alpha0-alpha0", statement: "[alpha_0(k), alpha_0(l)] = 2 delta_k(k+l) (A_2l), 2r delta_k(k+l) (others)", enumerate: fam_alpha0_alpha0 },
    Family { id: 6, name: "alpha0-alphaj", statement: "[alpha_0(k), alpha_j(l)] = r a_0j delta_k(k+l) (A_2l, A_2l-1, D_4), a_0j delta_k(k+l) (D_l+1)", enumerate: fam_alpha0_alphaj },
    Family { id: 7, name: "alphai-alphaj", statement: "[alpha_i(k), alpha_j(l)] = r a_ij delta_k(k+l) (A_2l, A_2l-1, D_4), a_ij delta_k(k+l) (D_l+1); i <= j, (i,j) not (l-1,l), (l,l)", enumerate: fam_alpha_alpha },
    Family { id: 8, name: "alpha-lm1-alpha-l", statement: "[alpha_{l-1}(k), alpha_l(l)] = 4a (A_2l), a (A_2l-1, D_4), 2a (D_l+1) times delta_k(k+l), a = a_{l-1,l}", enumerate: fam_alpha_lm1_l },
    Family { id: 9, name: "alpha-l-alpha-l", statement: "[alpha_l(k), alpha_l(l)] = 8 (A_2l), 2 (A_2l-1, D_4), 4 (D_l+1) times delta_k(k+l)", enumerate: fam_alpha_l_l },
    Family { id: 10, name: "alpha-x", statement: "[alpha_i(k), X(±alpha_j,l)] = ±a_ij X(±alpha_j,k+l)", enumerate: fam_alpha_x },
    Family { id: 11, name: "x-x-same", statement: "[X(±alpha_i,k), X(±alpha_i,l)] = 0", enumerate: fam_x_same },
    Family { id: 12, name: "x-xminus", statement: "[X(alpha_i,k), X(-alpha_j,l)] = delta_ij (alpha_i(k+l) + c_i delta_k(k+l))", enumerate: fam_x_minus },
    Family { id: 13, name: "serre-0", statement: "ad X(±alpha_i,k) X(±alpha_j,l) = 0 for a_ij = 0", enumerate: fam_serre0 },
    Family { id: 14, name: "serre-1", statement: "(ad X(±alpha_i))^2 X(±alpha_j) = 0 for a_ij = -1", enumerate: fam_serre1 },
    Family { id: 15, name: "serre-2", statement: "(ad X(±alpha_i))^3 X(±alpha_j) = 0 for a_ij = -2", enumerate: fam_serre2 },
    Family { id: 16, name: "serre-3", statement: "(ad X(±alpha_i))^4 X(±alpha_j) = 0 for a_ij = -3", enumerate: fam_serre3 },
    Family { id: 17, name: "d1", statement: "[d_1, alpha_i(k)] = 0, [d_1, X(±alpha_i,k)] = ±delta_i0 X(±alpha_i,k)", enumerate: fam_d1 },
    Family { id: 18, name: "dj", statement: "[d_j, alpha_i(k)] = k_j alpha_i(k), [d_j, X(±alpha_i,k)] = k_j X(±alpha_i,k)", enumerate: fam_dj },
    Family { id: 19, name: "d-d", statement: "[d_i, d_j] = 0", enumerate: fam_dd },
];

/// Extended Cartan matrix from the printed case list; nodes `0..=l`,
/// `a_ij = alpha_j(h_i)` on the finite block.
pub fn extended_cartan(cfg: GConfig) -> Result<Vec<Vec<i64>>> {
    let tor = Toroidal::new(cfg, 1)?;
    Ok(printed_cartan(&tor))
}

fn printed_cartan(tor: &Toroidal) -> Vec<Vec<i64>> {
    let ell = tor.ell();
    let mut a = vec![vec![0i64; ell + 1]; ell + 1];
    for i in 0..ell {
        for j in 0..ell {
            a[i + 1][j + 1] = tor.tw.g0_cartan[i][j];
        }
    }
    a[0][0] = 2;
    match tor.tw.kind {
        TwistKind::A2l => {
            a[0][1] = -1;
            a[1][0] = -2;
        }
        TwistKind::A2lm1 => {
            a[0][2] = -1;
            a[2][0] = -1;
        }
        TwistKind::Dl1 => {
            a[0][1] = -2;
            a[1][0] = -1;
        }
        TwistKind::D4 => {
            a[0][1] = -1;
            a[1][0] = -1;
        }
    }
    a
}

fn gen(g: MryGenerator) -> Expr {
    Expr::Gen(g)
}

fn delta(r: &[i64], s: &[i64]) -> Expr {
    gen(MryGenerator::DeltaCentral { r: r.to_vec(), s: s.to_vec() })
}

fn alpha(i: usize, k: &[i64]) -> Expr {
    gen(MryGenerator::CartanGen { i, k: k.to_vec() })
}

fn xgen(sign: i8, i: usize, k: &[i64]) -> Expr {
    gen(MryGenerator::RootGen { sign, i, k: k.to_vec() })
}

fn dgen(j: usize) -> Expr {
    gen(MryGenerator::Derivation(j))
}

fn vadd(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

/// All integer vectors of length `dim` with entries in `-radius..=radius`.
pub fn exponent_box(dim: usize, radius: i64) -> Vec<Vec<i64>> {
    let mut out = vec![Vec::new()];
    for _ in 0..dim {
        let mut next = Vec::new();
        for v in &out {
            for x in -radius..=radius {
                let mut w = v.clone();
                w.push(x);
                next.push(w);
            }
        }
        out = next;
    }
    out
}

pub struct Presentation {
    pub tor: Toroidal,
    pub table: CartanTable,
    /// extended Cartan matrix in use
    pub a: Vec<Vec<i64>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Witness {
    pub label: String,
    pub lhs: String,
    pub rhs: String,
    /// `phi(lhs) - phi(rhs)`
    pub difference: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct FamilyReport {
    pub id: usize,
    pub name: String,
    pub checked: usize,
    pub passed: usize,
    pub first_failure: Option<Witness>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SweepReport {
    pub algebra: String,
    pub n: usize,
    pub box_radius: i64,
    pub table: CartanTable,
    pub extended_cartan: Vec<Vec<i64>>,
    pub derived_cartan: Vec<Vec<i64>>,
    pub families: Vec<FamilyReport>,
    pub checked: usize,
    pub passed: usize,
}

impl SweepReport {
    pub fn all_pass(&self) -> bool {
        self.checked == self.passed
    }

    pub fn failing_families(&self) -> Vec<usize> {
        self.families.iter().filter(|f| f.passed != f.checked).map(|f| f.id).collect()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SpanReport {
    pub rounds: usize,
    /// (monomial, dimension reached, dimension of the graded piece)
    pub pieces: Vec<(Mono, usize, usize)>,
    pub complete: bool,
}

impl Presentation {
    pub fn new(cfg: GConfig, n: usize, table: CartanTable) -> Result<Self> {
        if n < 2 {
            return Err(Error::Invalid("the presentation needs n >= 2".into()));
        }
        let tor = Toroidal::new(cfg, n)?;
        let mut p = Presentation { a: printed_cartan(&tor), tor, table };
        if table == CartanTable::Derived {
            p.a = p.derived_cartan();
        }
        Ok(p)
    }

    pub fn ell(&self) -> usize {
        self.tor.ell()
    }

    pub fn r(&self) -> i64 {
        self.tor.r() as i64
    }

    fn kind(&self) -> TwistKind {
        self.tor.tw.kind
    }

    fn full(&self, first: i64, k: &[i64]) -> Mono {
        let mut m = vec![first];
        m.extend_from_slice(k);
        m
    }

    pub fn phi(&self, g: &MryGenerator) -> LieElement {
        let tw = &self.tor.tw;
        match g {
            MryGenerator::DeltaCentral { r, s } => {
                let m = self.full(0, s);
                let mut out = LieElement::zero();
                for (p, rp) in r.iter().enumerate() {
                    out.add_central(&m, p + 1, &Scalar::from_int(*rp));
                }
                out
            }
            MryGenerator::CartanGen { i: 0, k } => {
                let m = self.full(0, k);
                let (h, c) = match self.kind() {
                    TwistKind::A2l => (tw.h_theta0.clone(), 1),
                    _ => (tw.h_th[0].clone(), self.r()),
                };
                let mut out = LieElement::loop_elem(&h.neg(), &m);
                out.add_central(&m, 0, &Scalar::from_int(c));
                out
            }
            MryGenerator::CartanGen { i, k } => LieElement::loop_elem(&tw.h0[i - 1], &self.full(0, k)),
            MryGenerator::RootGen { sign, i: 0, k } => {
                if *sign > 0 {
                    LieElement::loop_elem(&tw.lowest_generator().neg(), &self.full(1, k))
                } else {
                    LieElement::loop_elem(&tw.highest_generator().neg(), &self.full(-1, k))
                }
            }
            MryGenerator::RootGen { sign, i, k } => {
                let x = if *sign > 0 { &tw.e0[i - 1] } else { &tw.f0[i - 1] };
                LieElement::loop_elem(x, &self.full(0, k))
            }
            MryGenerator::Derivation(j) => LieElement::der_elem(j - 1),
        }
    }

    pub fn eval(&self, e: &Expr, memo: &mut HashMap<Expr, LieElement>) -> LieElement {
        match e {
            Expr::Gen(g) => self.phi(g),
            Expr::Sum(t) => {
                let mut out = LieElement::zero();
                for (c, x) in t {
                    out.add_assign(&self.eval(x, memo).scale(c));
                }
                out
            }
            Expr::Bracket(a, b) => {
                if let Some(v) = memo.get(e) {
                    return v.clone();
                }
                let x = self.eval(a, memo);
                let y = self.eval(b, memo);
                let v = self.tor.bracket(&x, &y);
                memo.insert(e.clone(), v.clone());
                v
            }
        }
    }

    /// `Ok(())` on exact equality, otherwise the witness.
    pub fn check_relation(&self, rel: &RelationInstance, memo: &mut HashMap<Expr, LieElement>) -> std::result::Result<(), Witness> {
        let l = self.eval(&rel.lhs, memo);
        let r = self.eval(&rel.rhs, memo);
        if l == r {
            Ok(())
        } else {
            Err(Witness {
                label: rel.label.clone(),
                lhs: rel.lhs.to_string(),
                rhs: rel.rhs.to_string(),
                difference: self.tor.render(&l.sub(&r)),
            })
        }
    }

    pub fn enumerate_family(&self, id: usize, bx: &[Vec<i64>]) -> Vec<RelationInstance> {
        (FAMILIES[id - 1].enumerate)(self, bx)
    }

    pub fn enumerate_relations(&self, bx: &[Vec<i64>]) -> Vec<RelationInstance> {
        FAMILIES.iter().flat_map(|f| (f.enumerate)(self, bx)).collect()
    }

    pub fn check_family(&self, id: usize, bx: &[Vec<i64>]) -> FamilyReport {
        let rels = self.enumerate_family(id, bx);
        let mut memo = HashMap::new();
        let mut passed = 0;
        let mut first_failure = None;
        for rel in &rels {
            match self.check_relation(rel, &mut memo) {
                Ok(()) => passed += 1,
                Err(w) => {
                    if first_failure.is_none() {
                        first_failure = Some(w);
                    }
                }
            }
        }
        FamilyReport { id, name: FAMILIES[id - 1].name.to_string(), checked: rels.len(), passed, first_failure }
    }

    pub fn sweep(&self, radius: i64) -> SweepReport {
        let bx = exponent_box(self.tor.n - 1, radius);
        let families: Vec<FamilyReport> = FAMILIES.iter().map(|f| self.check_family(f.id, &bx)).collect();
        SweepReport {
            algebra: self.tor.tw.cfg.name(),
            n: self.tor.n,
            box_radius: radius,
            table: self.table,
            extended_cartan: self.a.clone(),
            derived_cartan: self.derived_cartan(),
            checked: families.iter().map(|f| f.checked).sum(),
            passed: families.iter().map(|f| f.passed).sum(),
            families,
        }
    }

    /// `a_ij` read off from `[phi alpha_i(0), phi X(alpha_j, 0)] = a_ij phi X(alpha_j, 0)`.
    pub fn derived_cartan(&self) -> Vec<Vec<i64>> {
        let ell = self.ell();
        let z = vec![0; self.tor.n - 1];
        (0..=ell)
            .map(|i| {
                (0..=ell)
                    .map(|j| {
                        let h = self.phi(&MryGenerator::CartanGen { i, k: z.clone() });
                        let x = self.phi(&MryGenerator::RootGen { sign: 1, i: j, k: z.clone() });
                        let b = self.tor.bracket(&h, &x);
                        let (key, c) = x.loops.iter().next().expect("nonzero root vector");
                        let ratio = b.loops.get(key).cloned().unwrap_or_else(Scalar::zero) * c.inv().expect("nonzero");
                        debug_assert_eq!(b, x.scale(&ratio));
                        ratio.to_i64().expect("integral Cartan entry")
                    })
                    .collect()
            })
            .collect()
    }

    /// Closes the `phi X(±alpha_i, k)` (k in the box) under brackets for
    /// `rounds` doubling rounds, keeping only monomials with all exponents
    /// in `-1..=1`, and compares the loop part at each such monomial with
    /// the graded piece `g_{m_1 mod r}`.
    pub fn spanning_check(&self, rounds: usize) -> SpanReport {
        let n = self.tor.n;
        let g = &self.tor.tw.g;
        let window = exponent_box(n, 1);
        let in_window = |m: &Mono| m.iter().all(|x| x.abs() <= 1);
        let mut basis: BTreeMap<Mono, Vec<GElem>> = BTreeMap::new();
        let mut all: Vec<(Mono, GElem)> = Vec::new();
        let mut frontier: Vec<(Mono, GElem)> = Vec::new();
        let bx = exponent_box(n - 1, 1);
        for i in 0..=self.ell() {
            for sign in [1i8, -1] {
                for k in &bx {
                    let x = self.phi(&MryGenerator::RootGen { sign, i, k: k.clone() });
                    for m in x.loop_monomials() {
                        let v = x.loop_at(&m);
                        if reduce_insert(basis.entry(m.clone()).or_default(), v.clone()) {
                            frontier.push((m, v));
                        }
                    }
                }
            }
        }
        for _ in 0..rounds {
            all.extend(frontier.iter().cloned());
            let mut next = Vec::new();
            for (m1, x) in &frontier {
                for (m2, y) in &all {
                    let m = crate::toroidal::mono_add(m1, m2);
                    if !in_window(&m) {
                        continue;
                    }
                    let z = g.bracket(x, y);
                    if z.is_zero() {
                        continue;
                    }
                    if reduce_insert(basis.entry(m.clone()).or_default(), z.clone()) {
                        next.push((m, z));
                    }
                }
            }
            frontier = next;
            if frontier.is_empty() {
                break;
            }
        }
        let r = self.tor.r() as i64;
        let pieces: Vec<(Mono, usize, usize)> = window
            .into_iter()
            .map(|m| {
                let found = basis.get(&m).map_or(0, |b| b.len());
                let want = self.tor.tw.grade_dim(m[0].rem_euclid(r) as usize);
                (m, found, want)
            })
            .collect();
        let complete = pieces.iter().all(|(_, a, b)| a == b);
        SpanReport { rounds, pieces, complete }
    }

    // coefficient tables, evaluated for the configured type

    fn coef_alpha0_alpha0(&self) -> i64 {
        match self.kind() {
            TwistKind::A2l => 2,
            _ => 2 * self.r(),
        }
    }

    fn coef_alpha0_alphaj(&self, j: usize) -> i64 {
        match self.kind() {
            TwistKind::Dl1 => self.a[0][j],
            _ => self.r() * self.a[0][j],
        }
    }

    fn coef_alpha_alpha(&self, i: usize, j: usize) -> i64 {
        match self.kind() {
            TwistKind::Dl1 => self.a[i][j],
            _ => self.r() * self.a[i][j],
        }
    }

    fn coef_lm1_l(&self) -> i64 {
        let ell = self.ell();
        let a = self.a[ell - 1][ell];
        match self.kind() {
            TwistKind::A2l => 4 * a,
            TwistKind::A2lm1 | TwistKind::D4 => a,
            TwistKind::Dl1 => 2 * a,
        }
    }

    fn coef_l_l(&self) -> i64 {
        match self.kind() {
            TwistKind::A2l => 8,
            TwistKind::A2lm1 | TwistKind::D4 => 2,
            TwistKind::Dl1 => 4,
        }
    }

    /// central coefficient in `[X(alpha_i,k), X(-alpha_i,l)]`
    pub fn coef_x_xminus(&self, i: usize) -> i64 {
        let r = self.r();
        let ell = self.ell();
        let d = |a: usize, b: usize| i64::from(a == b);
        match self.kind() {
            TwistKind::A2l => r * (1 + d(i, ell) * (r - 1)) - d(i, 0) * (r - 1),
            TwistKind::A2lm1 | TwistKind::D4 => r - d(i, ell) * (r - 1),
            TwistKind::Dl1 => 1 + (d(i, 0) + d(i, ell)) * (r - 1),
        }
    }
}

/// Reduces `v` against an echelon basis (pivot = first key) and inserts the
/// remainder if nonzero. Returns whether the span grew.
fn reduce_insert(basis: &mut Vec<GElem>, mut v: GElem) -> bool {
    for b in basis.iter() {
        let (&p, _) = b.0.iter().next().expect("nonzero basis vector");
        let c = v.get(p);
        if !c.is_zero() {
            v.add_scaled(b, &-c);
        }
    }
    let Some((&p, c)) = v.0.iter().next() else {
        return false;
    };
    let inv = c.inv().expect("nonzero pivot");
    let v = v.scale(&inv);
    for b in basis.iter_mut() {
        let c = b.get(p);
        if !c.is_zero() {
            b.add_scaled(&v, &-c);
        }
    }
    basis.push(v);
    true
}

fn rel(family: usize, label: String, lhs: Expr, rhs: Expr) -> RelationInstance {
    RelationInstance { family, label, lhs, rhs }
}

fn fam_delta_additive(_: &Presentation, bx: &[Vec<i64>]) -> Vec<RelationInstance> {
    let mut out = Vec::new();
    for r in bx {
        for k in bx {
            for s in bx {
                out.push(rel(
                    1,
                    format!("r={:?} k={:?} s={:?}", r, k, s),
                    Expr::sum(vec![(1, delta(r, s)), (1, delta(k, s))]),
                    delta(&vadd(r, k), s),
                ));
            }
        }
    }
    out
}

fn fam_delta_diagonal(_: &Presentation, bx: &[Vec<i64>]) -> Vec<RelationInstance> {
    bx.iter().map(|r| rel(2, format!("r={:?}", r), delta(r, r), Expr::zero())).collect()
}

fn fam_delta_central(p: &Presentation, bx: &[Vec<i64>]) -> Vec<RelationInstance> {
    let mut out = Vec::new();
    for r in bx {
        for s in bx {
            let d = delta(r, s);
            for k in bx {
                for l in bx {
                    out.push(rel(3, format!("delta r={:?} s={:?} k={:?} l={:?}", r, s, k, l), Expr::br(d.clone(), delta(k, l)), Expr::zero()));
                }
                for i in 0..=p.ell() {
                    out.push(rel(3, format!("alpha r={:?} s={:?} i={} k={:?}", r, s, i, k), Expr::br(d.clone(), alpha(i, k)), Expr::zero()));
                    for sign in [1i8, -1] {
                        out.push(rel(
                            3,
                            format!("X r={:?} s={:?} sign={} i={} k={:?}", r, s, sign, i, k),
                            Expr::br(d.clone(), xgen(sign, i, k)),
                            Expr::zero(),
                        ));
                    }
                }
            }
        }
    }
    out
}

fn fam_delta_derivation(p: &Presentation, bx: &[Vec<i64>]) -> Vec<RelationInstance> {
    let mut out = Vec::new();
    for r in bx {
        for s in bx {
            out.push(rel(4, format!("j=1 r={:?} s={:?}", r, s), Expr::br(dgen(1), delta(r, s)), Expr::zero()));
            for j in 2..=p.tor.n {
                out.push(rel(
                    4,
                    format!("j={} r={:?} s={:?}", j, r, s),
                    Expr::br(dgen(j), delta(r, s)),
                    Expr::scaled(s[j - 2], delta(r, s)),
                ));
            }
        }
    }
    out
}

fn alpha_pairs(family: usize, bx: &[Vec<i64>], i: usize, j: usize, c: i64) -> Vec<RelationInstance> {
    let mut out = Vec::new();
    for k in bx {
        for l in bx {
            out.push(rel(
                family,
                format!("i={} j={} k={:?} l={:?}", i, j, k, l),
                Expr::br(alpha(i, k), alpha(j, l)),
                Expr::scaled(c, delta(k, &vadd(k, l))),
            ));
        }
    }
    out
}

fn fam_alpha0_alpha0(p: &Presentation, bx: &[Vec<i64>]) -> Vec<RelationInstance> {
    alpha_pairs(5, bx, 0, 0, p.coef_alpha0_alpha0())
}

fn fam_alpha0_alphaj(p: &Presentation, bx: &[Vec<i64>]) -> Vec<RelationInstance> {
    (1..=p.ell()).flat_map(|j| alpha_pairs(6, bx, 0, j, p.coef_alpha0_alphaj(j))).collect()
}

fn fam_alpha_alpha(p: &Presentation, bx: &[Vec<i64>]) -> Vec<RelationInstance> {
    let ell = p.ell();
    let mut out = Vec::new();
    for i in 1..=ell {
        for j in i..=ell {
            if (i + 1 == ell && j == ell) || (i == ell && j == ell) {
                continue;
            }
            out.extend(alpha_pairs(7, bx, i, j, p.coef_alpha_alpha(i, j)));
        }
    }
    out
}

fn fam_alpha_lm1_l(p: &Presentation, bx: &[Vec<i64>]) -> Vec<RelationInstance> {
    let ell = p.ell();
    if ell < 2 {
        return Vec::new();
    }
    alpha_pairs(8, bx, ell - 1, ell, p.coef_lm1_l())
}

fn fam_alpha_l_l(p: &Presentation, bx: &[Vec<i64>]) -> Vec<RelationInstance> {
    let ell = p.ell();
    alpha_pairs(9, bx, ell, ell, p.coef_l_l())
}

fn fam_alpha_x(p: &Presentation, bx: &[Vec<i64>]) -> Vec<RelationInstance> {
    let mut out = Vec::new();
    for i in 0..=p.ell() {
        for j in 0..=p.ell() {
            for sign in [1i8, -1] {
                for k in bx {
                    for l in bx {
                        out.push(rel(
                            10,
                            format!("i={} j={} sign={} k={:?} l={:?}", i, j, sign, k, l),
                            Expr::br(alpha(i, k), xgen(sign, j, l)),
                            Expr::scaled(i64::from(sign) * p.a[i][j], xgen(sign, j, &vadd(k, l))),
                        ));
                    }
                }
            }
        }
    }
    out
}

fn fam_x_same(p: &Presentation, bx: &[Vec<i64>]) -> Vec<RelationInstance> {
    let mut out = Vec::new();
    for i in 0..=p.ell() {
        for sign in [1i8, -1] {
            for k in bx {
                for l in bx {
                    out.push(rel(
                        11,
                        format!("i={} sign={} k={:?} l={:?}", i, sign, k, l),
                        Expr::br(xgen(sign, i, k), xgen(sign, i, l)),
                        Expr::zero(),
                    ));
                }
            }
        }
    }
    out
}

fn fam_x_minus(p: &Presentation, bx: &[Vec<i64>]) -> Vec<RelationInstance> {
    let mut out = Vec::new();
    for i in 0..=p.ell() {
        for j in 0..=p.ell() {
            for k in bx {
                for l in bx {
                    let kl = vadd(k, l);
                    let rhs = if i == j {
                        Expr::sum(vec![(1, alpha(i, &kl)), (p.coef_x_xminus(i), delta(k, &kl))])
                    } else {
                        Expr::zero()
                    };
                    out.push(rel(12, format!("i={} j={} k={:?} l={:?}", i, j, k, l), Expr::br(xgen(1, i, k), xgen(-1, j, l)), rhs));
                }
            }
        }
    }
    out
}

fn serre(p: &Presentation, bx: &[Vec<i64>], family: usize, guard: i64) -> Vec<RelationInstance> {
    let depth = (1 - guard) as usize;
    let mut out = Vec::new();
    for i in 0..=p.ell() {
        for j in 0..=p.ell() {
            if i == j || p.a[i][j] != guard {
                continue;
            }
            for sign in [1i8, -1] {
                let tuples = exponent_tuples(bx, depth + 1);
                for t in tuples {
                    let xs: Vec<Expr> = t[..depth].iter().map(|k| xgen(sign, i, k)).collect();
                    let lhs = Expr::ad_chain(xs, xgen(sign, j, &t[depth]));
                    out.push(rel(family, format!("i={} j={} sign={} exps={:?}", i, j, sign, t), lhs, Expr::zero()));
                }
            }
        }
    }
    out
}

fn exponent_tuples(bx: &[Vec<i64>], len: usize) -> Vec<Vec<Vec<i64>>> {
    let mut out: Vec<Vec<Vec<i64>>> = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|t| {
                bx.iter().map(move |k| {
                    let mut u = t.clone();
                    u.push(k.clone());
                    u
                })
            })
            .collect();
    }
    out
}

fn fam_serre0(p: &Presentation, bx: &[Vec<i64>]) -> Vec<RelationInstance> {
    serre(p, bx, 13, 0)
}

fn fam_serre1(p: &Presentation, bx: &[Vec<i64>]) -> Vec<RelationInstance> {
    serre(p, bx, 14, -1)
}

fn fam_serre2(p: &Presentation, bx: &[Vec<i64>]) -> Vec<RelationInstance> {
    serre(p, bx, 15, -2)
}

fn fam_serre3(p: &Presentation, bx: &[Vec<i64>]) -> Vec<RelationInstance> {
    serre(p, bx, 16, -3)
}

fn fam_d1(p: &Presentation, bx: &[Vec<i64>]) -> Vec<RelationInstance> {
    let mut out = Vec::new();
    for i in 0..=p.ell() {
        for k in bx {
            out.push(rel(17, format!("alpha i={} k={:?}", i, k), Expr::br(dgen(1), alpha(i, k)), Expr::zero()));
            for sign in [1i8, -1] {
                let c = if i == 0 { i64::from(sign) } else { 0 };
                out.push(rel(
                    17,
                    format!("X i={} sign={} k={:?}", i, sign, k),
                    Expr::br(dgen(1), xgen(sign, i, k)),
                    Expr::scaled(c, xgen(sign, i, k)),
                ));
            }
        }
    }
    out
}

fn fam_dj(p: &Presentation, bx: &[Vec<i64>]) -> Vec<RelationInstance> {
    let mut out = Vec::new();
    for j in 2..=p.tor.n {
        for i in 0..=p.ell() {
            for k in bx {
                let kj = k[j - 2];
                out.push(rel(18, format!("j={} alpha i={} k={:?}", j, i, k), Expr::br(dgen(j), alpha(i, k)), Expr::scaled(kj, alpha(i, k))));
                for sign in [1i8, -1] {
                    out.push(rel(
                        18,
                        format!("j={} X i={} sign={} k={:?}", j, i, sign, k),
                        Expr::br(dgen(j), xgen(sign, i, k)),
                        Expr::scaled(kj, xgen(sign, i, k)),
                    ));
                }
            }
        }
    }
    out
}

fn fam_dd(p: &Presentation, _: &[Vec<i64>]) -> Vec<RelationInstance> {
    let mut out = Vec::new();
    for i in 1..=p.tor.n {
        for j in 1..=p.tor.n {
            out.push(rel(19, format!("i={} j={}", i, j), Expr::br(dgen(i), dgen(j)), Expr::zero()));
        }
    }
    out
}
