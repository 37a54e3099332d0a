//! Simple Lie algebras of type A and D in a Chevalley basis, their diagram
//! automorphisms and the induced finite-order grading.
//!
//! Basis layout for a rank `n` algebra with `P` positive roots:
//! `0..P` are `e'_a`, `P..2P` are `f'_a` (same root order), `2P..2P+n` are `h'_i`.
//! The bracket is normalized so that `[e'_a, f'_a] = h'_a` and the invariant
//! form has `(e'_a|f'_a) = 1`, `(h'_i|h'_j) = a_ij`.

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, HashMap};
use num_rational::Ratio;
use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize, PartialOrd, Ord)]
pub enum CartanType {
    A,
    D,
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CartanType::A => write!(f, "A"),
            CartanType::D => write!(f, "D"),
        }
    }
}

impl std::str::FromStr for CartanType {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "A" | "a" => Ok(CartanType::A),
            "D" | "d" => Ok(CartanType::D),
            _ => Err(Error::UnsupportedType(s.to_string())),
        }
    }
}

/// Sparse element of a finite-dimensional algebra, keyed by basis index.
#[derive(Clone, PartialEq, Eq, Default, Debug, Serialize, Deserialize)]
pub struct GElem(pub BTreeMap<usize, Scalar>);

impl GElem {
    pub fn zero() -> Self {
        GElem(BTreeMap::new())
    }

    pub fn basis(i: usize) -> Self {
        let mut m = BTreeMap::new();
        m.insert(i, Scalar::one());
        GElem(m)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn add_term(&mut self, i: usize, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        let e = self.0.entry(i).or_insert_with(Scalar::zero);
        *e += c;
        if e.is_zero() {
            self.0.remove(&i);
        }
    }

    pub fn add(&self, o: &GElem) -> GElem {
        let mut r = self.clone();
        for (i, c) in &o.0 {
            r.add_term(*i, c);
        }
        r
    }

    pub fn add_scaled(&mut self, o: &GElem, s: &Scalar) {
        for (i, c) in &o.0 {
            self.add_term(*i, &(c * s));
        }
    }

    pub fn scale(&self, s: &Scalar) -> GElem {
        if s.is_zero() {
            return GElem::zero();
        }
        GElem(self.0.iter().map(|(i, c)| (*i, c * s)).collect())
    }

    pub fn neg(&self) -> GElem {
        self.scale(&Scalar::from_int(-1))
    }

    pub fn get(&self, i: usize) -> Scalar {
        self.0.get(&i).cloned().unwrap_or_default()
    }
}

/// Asymmetry function on simple roots: -1 on the diagonal and on (i,j) with
/// i<j joined by an edge.
fn eps_simple(cartan: &[Vec<i64>], i: usize, j: usize) -> bool {
    i == j || (i < j && cartan[i][j] == -1)
}

#[derive(Clone, Debug)]
pub struct SimpleLie {
    pub ty: CartanType,
    pub rank: usize,
    pub cartan: Vec<Vec<i64>>,
    /// positive roots in simple-root coordinates, sorted by height
    pub pos_roots: Vec<Vec<i64>>,
    root_pos: HashMap<Vec<i64>, usize>,
    /// structure constants: br[a][b] = sparse integer combination
    br: Vec<Vec<Vec<(usize, i64)>>>,
    form: Vec<Vec<i64>>,
}

impl SimpleLie {
    pub fn new(ty: CartanType, rank: usize) -> Result<Self> {
        let ok = match ty {
            CartanType::A => rank >= 1,
            CartanType::D => rank >= 4,
        };
        if !ok {
            return Err(Error::UnsupportedType(format!("{ty}{rank}")));
        }
        let cartan = cartan_matrix(ty, rank);
        let pos_roots = positive_roots(&cartan);
        let root_pos = pos_roots.iter().enumerate().map(|(i, r)| (r.clone(), i)).collect();
        let mut g = SimpleLie { ty, rank, cartan, pos_roots, root_pos, br: Vec::new(), form: Vec::new() };
        g.build_tables();
        Ok(g)
    }

    pub fn npos(&self) -> usize {
        self.pos_roots.len()
    }

    pub fn dim(&self) -> usize {
        2 * self.npos() + self.rank
    }

    pub fn e(&self, a: usize) -> usize {
        a
    }

    pub fn f(&self, a: usize) -> usize {
        self.npos() + a
    }

    pub fn h(&self, i: usize) -> usize {
        2 * self.npos() + i
    }

    /// index (0-based) of the simple root `alpha_i` among positive roots
    pub fn simple(&self, i: usize) -> usize {
        let mut v = vec![0; self.rank];
        v[i] = 1;
        self.root_pos[&v]
    }

    pub fn root_index(&self, root: &[i64]) -> Option<usize> {
        self.root_pos.get(root).copied()
    }

    pub fn pairing(&self, a: &[i64], b: &[i64]) -> i64 {
        let mut s = 0;
        for i in 0..self.rank {
            if a[i] == 0 {
                continue;
            }
            for j in 0..self.rank {
                s += a[i] * self.cartan[i][j] * b[j];
            }
        }
        s
    }

    fn eps(&self, a: &[i64], b: &[i64]) -> i64 {
        let mut odd = 0i64;
        for i in 0..self.rank {
            for j in 0..self.rank {
                if eps_simple(&self.cartan, i, j) {
                    odd += a[i] * b[j];
                }
            }
        }
        if odd.rem_euclid(2) == 0 {
            1
        } else {
            -1
        }
    }

    /// weight of basis element `b` in simple-root coordinates (zero for h')
    pub fn basis_root(&self, b: usize) -> Vec<i64> {
        let p = self.npos();
        if b < p {
            self.pos_roots[b].clone()
        } else if b < 2 * p {
            self.pos_roots[b - p].iter().map(|x| -x).collect()
        } else {
            vec![0; self.rank]
        }
    }

    /// `E_a` for a (signed) root as (basis index, sign) with `f'_a = -E_{-a}`.
    fn e_of(&self, root: &[i64]) -> Option<(usize, i64)> {
        if let Some(i) = self.root_pos.get(root) {
            return Some((self.e(*i), 1));
        }
        let neg: Vec<i64> = root.iter().map(|x| -x).collect();
        self.root_pos.get(&neg).map(|i| (self.f(*i), -1))
    }

    fn coroot(&self, root: &[i64]) -> Vec<(usize, i64)> {
        root.iter().enumerate().filter(|(_, c)| **c != 0).map(|(i, c)| (self.h(i), *c)).collect()
    }

    fn build_tables(&mut self) {
        let d = self.dim();
        let p = self.npos();
        let n = self.rank;
        let mut br = vec![vec![Vec::new(); d]; d];
        // E-form: (sign, root) for root vectors
        let as_e = |b: usize| -> Option<(i64, Vec<i64>)> {
            if b < p {
                Some((1, self.pos_roots[b].clone()))
            } else if b < 2 * p {
                Some((-1, self.pos_roots[b - p].iter().map(|x| -x).collect()))
            } else {
                None
            }
        };
        for a in 0..d {
            for b in 0..d {
                let mut out: Vec<(usize, i64)> = Vec::new();
                match (as_e(a), as_e(b)) {
                    (None, None) => {}
                    (None, Some((_, rb))) => {
                        let i = a - 2 * p;
                        let ev: i64 = (0..n).map(|j| rb[j] * self.cartan[j][i]).sum();
                        if ev != 0 {
                            out.push((b, ev));
                        }
                    }
                    (Some((_, ra)), None) => {
                        let i = b - 2 * p;
                        let ev: i64 = (0..n).map(|j| ra[j] * self.cartan[j][i]).sum();
                        if ev != 0 {
                            out.push((a, -ev));
                        }
                    }
                    (Some((sa, ra)), Some((sb, rb))) => {
                        let sum: Vec<i64> = ra.iter().zip(&rb).map(|(x, y)| x + y).collect();
                        let eps = self.eps(&ra, &rb);
                        if sum.iter().all(|x| *x == 0) {
                            for (hi, c) in self.coroot(&ra) {
                                out.push((hi, sa * sb * eps * c));
                            }
                        } else if let Some((idx, sg)) = self.e_of(&sum) {
                            out.push((idx, sa * sb * eps * sg));
                        }
                    }
                }
                out.sort();
                br[a][b] = out;
            }
        }
        let mut form = vec![vec![0; d]; d];
        for a in 0..p {
            form[self.e(a)][self.f(a)] = 1;
            form[self.f(a)][self.e(a)] = 1;
        }
        for i in 0..n {
            for j in 0..n {
                form[self.h(i)][self.h(j)] = self.cartan[i][j];
            }
        }
        self.br = br;
        self.form = form;
    }

    pub fn bracket_basis(&self, a: usize, b: usize) -> &[(usize, i64)] {
        &self.br[a][b]
    }

    pub fn form_basis(&self, a: usize, b: usize) -> i64 {
        self.form[a][b]
    }

    pub fn bracket(&self, x: &GElem, y: &GElem) -> GElem {
        let mut out = GElem::zero();
        for (a, ca) in &x.0 {
            for (b, cb) in &y.0 {
                let t = self.bracket_basis(*a, *b);
                if t.is_empty() {
                    continue;
                }
                let c = ca * cb;
                for (k, s) in t {
                    out.add_term(*k, &c.scale_int(*s));
                }
            }
        }
        out
    }

    pub fn form(&self, x: &GElem, y: &GElem) -> Scalar {
        let mut s = Scalar::zero();
        for (a, ca) in &x.0 {
            for (b, cb) in &y.0 {
                let f = self.form_basis(*a, *b);
                if f != 0 {
                    s += (ca * cb).scale_int(f);
                }
            }
        }
        s
    }

    pub fn label(&self, b: usize) -> String {
        let p = self.npos();
        let r = |v: &[i64]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join("");
        if b < p {
            format!("e[{}]", r(&self.pos_roots[b]))
        } else if b < 2 * p {
            format!("f[{}]", r(&self.pos_roots[b - p]))
        } else {
            format!("h{}", b - 2 * p + 1)
        }
    }

    /// Every Jacobi triple on basis elements; returns the first failure.
    pub fn check_jacobi_exhaustive(&self) -> Option<(usize, usize, usize)> {
        let d = self.dim();
        for a in 0..d {
            for b in a + 1..d {
                for c in b + 1..d {
                    if !self.jacobi_zero(a, b, c) {
                        return Some((a, b, c));
                    }
                }
            }
        }
        None
    }

    pub fn jacobi_zero(&self, a: usize, b: usize, c: usize) -> bool {
        let (x, y, z) = (GElem::basis(a), GElem::basis(b), GElem::basis(c));
        let t1 = self.bracket(&x, &self.bracket(&y, &z));
        let t2 = self.bracket(&y, &self.bracket(&z, &x));
        let t3 = self.bracket(&z, &self.bracket(&x, &y));
        t1.add(&t2).add(&t3).is_zero()
    }

    /// `([x,y]|z) = (x|[y,z])` on all basis triples.
    pub fn check_invariance_exhaustive(&self) -> bool {
        let d = self.dim();
        for a in 0..d {
            for b in 0..d {
                let xy = self.bracket_basis(a, b);
                for c in 0..d {
                    let lhs: i64 = xy.iter().map(|(k, s)| s * self.form[*k][c]).sum();
                    let rhs: i64 = self.bracket_basis(b, c).iter().map(|(k, s)| s * self.form[a][*k]).sum();
                    if lhs != rhs {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Rows of the structure-constant table: (a, b, c, coefficient of c in [a,b]).
    pub fn structure_constants(&self) -> Vec<(usize, usize, usize, i64)> {
        let d = self.dim();
        let mut v = Vec::new();
        for a in 0..d {
            for b in 0..d {
                for (c, s) in self.bracket_basis(a, b) {
                    v.push((a, b, *c, *s));
                }
            }
        }
        v
    }

    pub fn structure_constants_csv(&self) -> String {
        let mut s = String::from("a,b,c,coeff\n");
        for (a, b, c, k) in self.structure_constants() {
            s.push_str(&format!("{},{},{},{}\n", self.label(a), self.label(b), self.label(c), k));
        }
        s
    }
}

pub fn cartan_matrix(ty: CartanType, n: usize) -> Vec<Vec<i64>> {
    let mut a = vec![vec![0i64; n]; n];
    for i in 0..n {
        a[i][i] = 2;
    }
    match ty {
        CartanType::A => {
            for i in 0..n.saturating_sub(1) {
                a[i][i + 1] = -1;
                a[i + 1][i] = -1;
            }
        }
        CartanType::D => {
            for i in 0..n - 2 {
                a[i][i + 1] = -1;
                a[i + 1][i] = -1;
            }
            // fork at node n-2 (1-based): nodes n-1 and n both hang off it
            a[n - 2][n - 1] = 0;
            a[n - 1][n - 2] = 0;
            a[n - 3][n - 1] = -1;
            a[n - 1][n - 3] = -1;
        }
    }
    a
}

/// Positive roots of a simply-laced system, by adding simple roots along
/// strings (in simply-laced type `b + a_i` is a root iff `(b|a_i) = -1`).
fn positive_roots(cartan: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = cartan.len();
    let pair = |a: &[i64], i: usize| -> i64 { (0..n).map(|j| a[j] * cartan[j][i]).sum() };
    let mut roots: Vec<Vec<i64>> = (0..n)
        .map(|i| {
            let mut v = vec![0; n];
            v[i] = 1;
            v
        })
        .collect();
    let mut layer = roots.clone();
    while !layer.is_empty() {
        let mut next: Vec<Vec<i64>> = Vec::new();
        for b in &layer {
            for i in 0..n {
                if pair(b, i) == -1 {
                    let mut c = b.clone();
                    c[i] += 1;
                    if !next.contains(&c) {
                        next.push(c);
                    }
                }
            }
        }
        next.sort();
        roots.extend(next.iter().cloned());
        layer = next;
    }
    roots
}

// ---------------------------------------------------------------------------
// twisted data

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum TwistKind {
    /// A_{2l}, order 2, fixed points of type B_l
    A2l,
    /// A_{2l-1}, order 2, fixed points C_l
    A2lm1,
    /// D_{l+1}, order 2, fixed points B_l
    Dl1,
    /// D_4, order 3, fixed points G_2
    D4,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GConfig {
    pub ty: CartanType,
    pub rank: usize,
    pub order: usize,
}

impl GConfig {
    /// Default order: 3 for D4, 2 otherwise.
    pub fn new(ty: CartanType, rank: usize) -> Self {
        let order = if ty == CartanType::D && rank == 4 { 3 } else { 2 };
        GConfig { ty, rank, order }
    }

    pub fn with_order(ty: CartanType, rank: usize, order: usize) -> Self {
        GConfig { ty, rank, order }
    }

    pub fn name(&self) -> String {
        format!("{}{}^({})", self.ty, self.rank, self.order)
    }
}

#[derive(Clone, Debug)]
pub struct Twist {
    pub g: SimpleLie,
    pub cfg: GConfig,
    pub kind: TwistKind,
    pub r: usize,
    pub ell: usize,
    /// node permutation (0-based)
    pub perm: Vec<usize>,
    /// images of basis elements under mu
    pub mu_table: Vec<Vec<(usize, i64)>>,
    /// xi^k for k = 0..r
    pub xi_pow: Vec<Scalar>,
    /// orbit of nodes attached to g0 node i (0-based)
    pub orbits: Vec<Vec<usize>>,
    pub e0: Vec<GElem>,
    pub f0: Vec<GElem>,
    pub h0: Vec<GElem>,
    /// Cartan matrix of g0, `a_ij = alpha_j(h_i)`
    pub g0_cartan: Vec<Vec<i64>>,
    pub theta0: Vec<i64>,
    pub e_theta0: GElem,
    pub f_theta0: GElem,
    pub h_theta0: GElem,
    /// `x^(j)_theta_s` for j = 0..r-1 (twisted kinds other than A_{2l}; zero vectors there)
    pub e_th: Vec<GElem>,
    pub f_th: Vec<GElem>,
    pub h_th: Vec<GElem>,
    grade_basis: Vec<Vec<GElem>>,
}

impl Twist {
    pub fn new(cfg: GConfig) -> Result<Self> {
        let g = SimpleLie::new(cfg.ty, cfg.rank)?;
        let n = cfg.rank;
        let (kind, ell, perm) = match (cfg.ty, cfg.order) {
            (CartanType::A, 2) if n >= 2 => {
                let perm: Vec<usize> = (0..n).map(|i| n - 1 - i).collect();
                if n % 2 == 0 {
                    (TwistKind::A2l, n / 2, perm)
                } else {
                    (TwistKind::A2lm1, (n + 1) / 2, perm)
                }
            }
            (CartanType::D, 2) => {
                let mut perm: Vec<usize> = (0..n).collect();
                perm.swap(n - 2, n - 1);
                (TwistKind::Dl1, n - 1, perm)
            }
            (CartanType::D, 3) if n == 4 => (TwistKind::D4, 2, vec![2, 1, 3, 0]),
            _ => return Err(Error::UnsupportedType(cfg.name())),
        };
        let r = cfg.order;
        let xi = Scalar::root_of_unity(r as i64)?;
        let xi_pow: Vec<Scalar> = (0..=r).map(|k| xi.pow(k as u32)).collect();
        let mu_table = build_mu(&g, &perm);

        let orbits: Vec<Vec<usize>> = match kind {
            TwistKind::A2l | TwistKind::A2lm1 => (0..ell)
                .map(|i| {
                    let mut o = vec![i, perm[i]];
                    o.sort();
                    o.dedup();
                    o
                })
                .collect(),
            TwistKind::Dl1 => (0..ell).map(|i| if i + 1 < ell { vec![i] } else { vec![n - 2, n - 1] }).collect(),
            TwistKind::D4 => vec![vec![0, 2, 3], vec![1]],
        };

        let sqrt2 = Scalar::sqrt2();
        let mut e0 = Vec::new();
        let mut f0 = Vec::new();
        let mut h0 = Vec::new();
        for (k, orb) in orbits.iter().enumerate() {
            let mut e = GElem::zero();
            let mut f = GElem::zero();
            let mut h = GElem::zero();
            for &i in orb {
                let a = g.simple(i);
                e.add_term(g.e(a), &Scalar::one());
                f.add_term(g.f(a), &Scalar::one());
                h.add_term(g.h(i), &Scalar::one());
            }
            if kind == TwistKind::A2l && k + 1 == ell {
                e = e.scale(&sqrt2);
                f = f.scale(&sqrt2);
                h = h.scale(&Scalar::from_int(2));
            }
            e0.push(e);
            f0.push(f);
            h0.push(h);
        }

        let theta0: Vec<i64> = match kind {
            TwistKind::A2l => vec![1; n],
            TwistKind::A2lm1 => (0..n).map(|i| i64::from(i + 1 < n)).collect(),
            TwistKind::Dl1 => (0..n).map(|i| i64::from(i < ell)).collect(),
            TwistKind::D4 => vec![1, 1, 1, 0],
        };
        let ti = g.root_index(&theta0).expect("theta0 is a root");
        let e_theta0 = GElem::basis(g.e(ti));
        let f_theta0 = GElem::basis(g.f(ti));
        let h_theta0 = g.bracket(&e_theta0, &f_theta0);

        let mut tw = Twist {
            g,
            cfg,
            kind,
            r,
            ell,
            perm,
            mu_table,
            xi_pow,
            orbits,
            e0,
            f0,
            h0,
            g0_cartan: Vec::new(),
            theta0,
            e_theta0,
            f_theta0,
            h_theta0,
            e_th: Vec::new(),
            f_th: Vec::new(),
            h_th: Vec::new(),
            grade_basis: Vec::new(),
        };
        tw.g0_cartan = (0..ell)
            .map(|i| {
                (0..ell)
                    .map(|j| {
                        let b = tw.g.bracket(&tw.h0[i], &tw.e0[j]);
                        tw.eigenvalue(&b, &tw.e0[j]).and_then(|s| s.to_i64()).expect("integral Cartan entry")
                    })
                    .collect()
            })
            .collect();
        if kind != TwistKind::A2l {
            for j in 0..r {
                tw.e_th.push(tw.twisted_sum(&tw.e_theta0, j));
                tw.f_th.push(tw.twisted_sum(&tw.f_theta0, j));
                tw.h_th.push(tw.twisted_sum(&tw.h_theta0, j));
            }
        }
        tw.grade_basis = (0..r).map(|s| tw.compute_grade_basis(s)).collect();
        Ok(tw)
    }

    pub fn xi(&self, k: i64) -> Scalar {
        self.xi_pow[k.rem_euclid(self.r as i64) as usize].clone()
    }

    pub fn mu(&self, x: &GElem) -> GElem {
        let mut out = GElem::zero();
        for (b, c) in &x.0 {
            for (k, s) in &self.mu_table[*b] {
                out.add_term(*k, &c.scale_int(*s));
            }
        }
        out
    }

    pub fn mu_pow(&self, x: &GElem, k: usize) -> GElem {
        let mut y = x.clone();
        for _ in 0..k % self.r {
            y = self.mu(&y);
        }
        y
    }

    /// `sum_{i=0}^{r-1} xi^{(r-i)j} mu^i(x)`
    pub fn twisted_sum(&self, x: &GElem, j: usize) -> GElem {
        let mut out = GElem::zero();
        let mut y = x.clone();
        for i in 0..self.r {
            out.add_scaled(&y, &self.xi(((self.r - i) * j) as i64));
            y = self.mu(&y);
        }
        out
    }

    /// Plain orbit sum `sum_{i<r} mu^i(x)`.
    pub fn orbit_sum(&self, x: &GElem) -> GElem {
        self.twisted_sum(x, 0)
    }

    /// `(1/r) sum_j xi^{-sj} mu^j`: projection onto `g_s`.
    pub fn project(&self, x: &GElem, s: usize) -> GElem {
        let mut out = GElem::zero();
        let mut y = x.clone();
        for j in 0..self.r {
            out.add_scaled(&y, &self.xi(-((s * j) as i64)));
            y = self.mu(&y);
        }
        out.scale(&Scalar::from_frac(1, self.r as i64))
    }

    /// `c` with `y = c x`, if any.
    pub fn eigenvalue(&self, y: &GElem, x: &GElem) -> Option<Scalar> {
        let (k, c) = x.0.iter().next()?;
        let lam = y.get(*k).checked_div(c).ok()?;
        if x.scale(&lam) == *y {
            Some(lam)
        } else {
            None
        }
    }

    /// `s` with `mu(x) = xi^s x`.
    pub fn grade_of(&self, x: &GElem) -> Option<usize> {
        if x.is_zero() {
            return None;
        }
        let m = self.mu(x);
        (0..self.r).find(|&s| x.scale(&self.xi(s as i64)) == m)
    }

    fn compute_grade_basis(&self, s: usize) -> Vec<GElem> {
        let vecs: Vec<GElem> = (0..self.g.dim()).map(|b| self.project(&GElem::basis(b), s)).collect();
        echelon(vecs)
    }

    pub fn grade_basis(&self, s: usize) -> &[GElem] {
        &self.grade_basis[s % self.r]
    }

    pub fn grade_dim(&self, s: usize) -> usize {
        self.grade_basis(s).len()
    }

    /// `dim h_s`: the `xi^s` eigenspace of `mu` on the Cartan subalgebra.
    pub fn cartan_grade_dim(&self, s: usize) -> usize {
        let vecs: Vec<GElem> = (0..self.g.rank).map(|i| self.project(&GElem::basis(self.g.h(i)), s % self.r)).collect();
        echelon(vecs).len()
    }

    /// `mu[a,b] = [mu a, mu b]` on all basis pairs, and `mu^r = 1`.
    pub fn check_mu(&self) -> bool {
        let d = self.g.dim();
        for a in 0..d {
            let x = GElem::basis(a);
            let mut y = x.clone();
            for _ in 0..self.r {
                y = self.mu(&y);
            }
            if y != x {
                return false;
            }
            for b in 0..d {
                let z = GElem::basis(b);
                let lhs = self.mu(&self.g.bracket(&x, &z));
                let rhs = self.g.bracket(&self.mu(&x), &self.mu(&z));
                if lhs != rhs {
                    return false;
                }
                if self.g.form(&self.mu(&x), &self.mu(&z)) != self.g.form(&x, &z) {
                    return false;
                }
            }
        }
        true
    }

    /// Normalized form value of two g0 coroots, `(h_i|h_j)`.
    pub fn h0_form(&self, i: usize, j: usize) -> Scalar {
        self.g.form(&self.h0[i], &self.h0[j])
    }

    /// Short highest root data `theta^0` evaluated on g0 coroots.
    pub fn theta_s_on_h0(&self) -> Vec<i64> {
        let x = self.orbit_sum(&self.e_theta0);
        (0..self.ell)
            .map(|i| {
                let b = self.g.bracket(&self.h0[i], &x);
                self.eigenvalue(&b, &x).and_then(|s| s.to_i64()).unwrap_or(0)
            })
            .collect()
    }

    /// Checks the bracket/pairing table of the theta-triples. Returns the
    /// names of failing entries.
    pub fn check_theta_table(&self) -> Vec<String> {
        let mut bad = Vec::new();
        if self.kind == TwistKind::A2l {
            return bad;
        }
        let r = self.r;
        let g = &self.g;
        for i in 0..r {
            for j in 0..r {
                let k = (i + j) % r;
                if g.bracket(&self.e_th[i], &self.f_th[j]) != self.h_th[k] {
                    bad.push(format!("[e({i}),f({j})]"));
                }
                let two = Scalar::from_int(2);
                if g.bracket(&self.h_th[i], &self.e_th[j]) != self.e_th[k].scale(&two) {
                    bad.push(format!("[h({i}),e({j})]"));
                }
                if g.bracket(&self.h_th[i], &self.f_th[j]) != self.f_th[k].scale(&-two) {
                    bad.push(format!("[h({i}),f({j})]"));
                }
                if (1..r).contains(&i) && (1..r).contains(&j) {
                    if !g.bracket(&self.e_th[i], &self.e_th[j]).is_zero() {
                        bad.push(format!("[e({i}),e({j})]"));
                    }
                    if !g.bracket(&self.f_th[i], &self.f_th[j]).is_zero() {
                        bad.push(format!("[f({i}),f({j})]"));
                    }
                }
                let pair = g.form(&self.e_th[(r - i) % r], &self.f_th[j]);
                let want = if i == j { Scalar::from_int(r as i64) } else { Scalar::zero() };
                if pair != want {
                    bad.push(format!("(e({})|f({j}))", (r - i) % r));
                }
            }
            if self.grade_of(&self.e_th[i]) != Some(i) {
                bad.push(format!("grade e({i})"));
            }
            if self.grade_of(&self.f_th[i]) != Some(i) {
                bad.push(format!("grade f({i})"));
            }
        }
        bad
    }

    /// Is `f^(1)_theta_s` (or `f'_theta0` for A_{2l}) killed by every `e^(0)_i`?
    /// Its weight is `-theta^0`, so this is false; see [`Twist::f1_is_lowest`].
    pub fn f1_is_highest(&self) -> bool {
        let v = self.lowest_generator();
        self.e0.iter().all(|e| self.g.bracket(e, &v).is_zero())
    }

    /// `f^(1)_theta_s` is killed by every `f^(0)_i`: a lowest weight vector of `g_1`.
    pub fn f1_is_lowest(&self) -> bool {
        let v = self.lowest_generator();
        self.f0.iter().all(|f| self.g.bracket(f, &v).is_zero())
    }

    /// `e^(r-1)_theta_s` is killed by every `e^(0)_i`: a highest weight vector of `g_{r-1}`.
    pub fn erm1_is_highest(&self) -> bool {
        let v = self.highest_generator();
        self.e0.iter().all(|e| self.g.bracket(e, &v).is_zero())
    }

    /// The g-part of `e_0`: `f^(1)_theta_s`, or `f'_theta0` for A_{2l}.
    pub fn lowest_generator(&self) -> GElem {
        match self.kind {
            TwistKind::A2l => self.f_theta0.clone(),
            _ => self.f_th[1 % self.r].clone(),
        }
    }

    /// The g-part of `f_0`: `e^(r-1)_theta_s`, or `e'_theta0` for A_{2l}.
    pub fn highest_generator(&self) -> GElem {
        match self.kind {
            TwistKind::A2l => self.e_theta0.clone(),
            _ => self.e_th[self.r - 1].clone(),
        }
    }

    /// Root of g0 (coordinates in g0 simple roots) for an ad(h0)-eigenvector.
    pub fn g0_weight(&self, x: &GElem) -> Option<Vec<i64>> {
        let evs: Vec<Scalar> = (0..self.ell)
            .map(|i| {
                let b = self.g.bracket(&self.h0[i], x);
                self.eigenvalue(&b, x).or_else(|| if b.is_zero() { Some(Scalar::zero()) } else { None })
            })
            .collect::<Option<Vec<_>>>()?;
        let evs: Vec<i64> = evs.iter().map(|s| s.to_i64()).collect::<Option<Vec<_>>>()?;
        solve_int(&self.g0_cartan, &evs)
    }

    /// Root system of g0 with the form restricted from g:
    /// `(alpha_i|alpha_i) = 4/(h_i|h_i)`.
    pub fn g0_roots(&self) -> RootSystem {
        let norms = (0..self.ell)
            .map(|i| {
                let hh = self.h0_form(i, i).to_i64().expect("integral norm");
                Ratio::new(4, hh)
            })
            .collect();
        RootSystem::new(self.g0_cartan.clone(), norms)
    }

    pub fn is_fixed_node(&self, i: usize) -> bool {
        self.orbits[i].len() == 1
    }
}

/// Root system of a (possibly non-simply-laced) Cartan matrix, with the
/// invariant form fixed by the squared lengths of the simple roots.
#[derive(Clone, Debug)]
pub struct RootSystem {
    /// `a_ij = alpha_j(h_i)`
    pub cartan: Vec<Vec<i64>>,
    pub simple_norms: Vec<Ratio<i64>>,
    /// positive roots in simple-root coordinates, by height
    pub pos_roots: Vec<Vec<i64>>,
}

impl RootSystem {
    pub fn new(cartan: Vec<Vec<i64>>, simple_norms: Vec<Ratio<i64>>) -> Self {
        let n = cartan.len();
        let pair_co = |b: &[i64], i: usize| -> i64 { (0..n).map(|j| b[j] * cartan[i][j]).sum() };
        let mut roots: Vec<Vec<i64>> = (0..n)
            .map(|i| {
                let mut v = vec![0; n];
                v[i] = 1;
                v
            })
            .collect();
        let mut k = 0;
        while k < roots.len() {
            let b = roots[k].clone();
            for i in 0..n {
                // length p of the string below b in direction i
                let mut p = 0;
                loop {
                    let mut c = b.clone();
                    c[i] -= p + 1;
                    if roots.contains(&c) {
                        p += 1;
                    } else {
                        break;
                    }
                }
                let q = p - pair_co(&b, i);
                if q > 0 {
                    let mut c = b.clone();
                    c[i] += 1;
                    if !roots.contains(&c) {
                        roots.push(c);
                    }
                }
            }
            k += 1;
        }
        roots.sort_by_key(|r| (r.iter().sum::<i64>(), r.clone()));
        RootSystem { cartan, simple_norms, pos_roots: roots }
    }

    pub fn rank(&self) -> usize {
        self.cartan.len()
    }

    /// `(alpha_i|alpha_j) = a_ij (alpha_i|alpha_i)/2`
    pub fn gram(&self, i: usize, j: usize) -> Ratio<i64> {
        self.simple_norms[i] * Ratio::from_integer(self.cartan[i][j]) / Ratio::from_integer(2)
    }

    pub fn form(&self, a: &[i64], b: &[i64]) -> Ratio<i64> {
        let mut s = Ratio::from_integer(0);
        for i in 0..self.rank() {
            if a[i] == 0 {
                continue;
            }
            for j in 0..self.rank() {
                if b[j] != 0 {
                    s += self.gram(i, j) * Ratio::from_integer(a[i] * b[j]);
                }
            }
        }
        s
    }

    pub fn all_roots(&self) -> Vec<Vec<i64>> {
        let mut v = self.pos_roots.clone();
        v.extend(self.pos_roots.iter().map(|r| r.iter().map(|x| -x).collect::<Vec<_>>()));
        v
    }

    pub fn is_root(&self, a: &[i64]) -> bool {
        let neg: Vec<i64> = a.iter().map(|x| -x).collect();
        self.pos_roots.iter().any(|r| r.as_slice() == a || *r == neg)
    }

    pub fn is_positive_root(&self, a: &[i64]) -> bool {
        self.pos_roots.iter().any(|r| r.as_slice() == a)
    }

    fn min_norm(&self) -> Ratio<i64> {
        self.simple_norms.iter().copied().min().expect("nonempty")
    }

    pub fn is_short_root(&self, a: &[i64]) -> bool {
        self.is_root(a) && self.form(a, a) == self.min_norm()
    }

    /// highest root among those of minimal length
    pub fn highest_short_root(&self) -> Vec<i64> {
        let m = self.min_norm();
        self.pos_roots.iter().rev().find(|r| self.form(r, r) == m).cloned().expect("short root")
    }

    /// simple reflection `s_i` on a vector in simple-root coordinates
    pub fn reflect(&self, i: usize, a: &[i64]) -> Vec<i64> {
        let c: i64 = (0..self.rank()).map(|j| a[j] * self.cartan[i][j]).sum();
        let mut out = a.to_vec();
        out[i] -= c;
        out
    }
}

/// Solve `sum_k c_k a_ik = v_i` in integers (a = g0 Cartan), if possible.
fn solve_int(a: &[Vec<i64>], v: &[i64]) -> Option<Vec<i64>> {
    let n = a.len();
    // transpose system: sum_k a[i][k] c_k = v_i
    let mut m: Vec<Vec<Ratio<i64>>> = (0..n)
        .map(|i| {
            let mut row: Vec<Ratio<i64>> = (0..n).map(|k| Ratio::from_integer(a[i][k])).collect();
            row.push(Ratio::from_integer(v[i]));
            row
        })
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&r| m[r][c] != Ratio::from_integer(0))?;
        m.swap(c, p);
        let piv = m[c][c];
        for k in c..=n {
            m[c][k] /= piv;
        }
        for r in 0..n {
            if r != c {
                let f = m[r][c];
                for k in c..=n {
                    let t = f * m[c][k];
                    m[r][k] -= t;
                }
            }
        }
    }
    m.iter().map(|row| if row[n].is_integer() { Some(row[n].to_integer()) } else { None }).collect()
}

/// Row-reduce a list of sparse vectors to a basis of their span.
pub fn echelon(vecs: Vec<GElem>) -> Vec<GElem> {
    let mut basis: Vec<(usize, GElem)> = Vec::new();
    for mut v in vecs {
        for (p, b) in &basis {
            let c = v.get(*p);
            if !c.is_zero() {
                v.add_scaled(b, &-c);
            }
        }
        if let Some((&p, c)) = v.0.iter().next() {
            let inv = c.inv().expect("nonzero pivot");
            let v = v.scale(&inv);
            for (_, b) in basis.iter_mut() {
                let c = b.get(p);
                if !c.is_zero() {
                    b.add_scaled(&v, &-c);
                }
            }
            basis.push((p, v));
        }
    }
    basis.sort_by_key(|(p, _)| *p);
    basis.into_iter().map(|(_, b)| b).collect()
}

/// Does `x` lie in the span of an echelon basis?
pub fn in_span(basis: &[GElem], x: &GElem) -> bool {
    let mut v = x.clone();
    for b in basis {
        let (&p, _) = b.0.iter().next().expect("nonzero basis vector");
        let c = v.get(p);
        if !c.is_zero() {
            v.add_scaled(b, &-c);
        }
    }
    v.is_zero()
}

fn build_mu(g: &SimpleLie, perm: &[usize]) -> Vec<Vec<(usize, i64)>> {
    let d = g.dim();
    let p = g.npos();
    let mut img: Vec<Option<GElem>> = vec![None; d];
    for i in 0..g.rank {
        let a = g.simple(i);
        let b = g.simple(perm[i]);
        img[g.e(a)] = Some(GElem::basis(g.e(b)));
        img[g.f(a)] = Some(GElem::basis(g.f(b)));
        img[g.h(i)] = Some(GElem::basis(g.h(perm[i])));
    }
    let to_int = |x: &GElem| -> Vec<(usize, i64)> {
        x.0.iter().map(|(k, c)| (*k, c.to_i64().expect("integral mu"))).collect()
    };
    for a in 0..p {
        if img[g.e(a)].is_some() {
            continue;
        }
        let alpha = &g.pos_roots[a];
        // alpha = beta + alpha_i with beta a positive root of lower height
        let (i, b) = (0..g.rank)
            .find_map(|i| {
                if alpha[i] == 0 {
                    return None;
                }
                let mut beta = alpha.clone();
                beta[i] -= 1;
                g.root_index(&beta).map(|b| (i, b))
            })
            .expect("decomposable root");
        let si = g.simple(i);
        let eps = g.eps(&g.pos_roots[si], &g.pos_roots[b]);
        let s = Scalar::from_int(eps);
        let me = g.bracket(img[g.e(si)].as_ref().unwrap(), img[g.e(b)].as_ref().unwrap()).scale(&s);
        let mf = g.bracket(img[g.f(si)].as_ref().unwrap(), img[g.f(b)].as_ref().unwrap()).scale(&-s);
        img[g.e(a)] = Some(me);
        img[g.f(a)] = Some(mf);
    }
    img.iter().map(|x| to_int(x.as_ref().unwrap())).collect()
}
