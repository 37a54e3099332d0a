//! Multiloop/toroidal algebras `g ⊗ C[t^±] ⊕ Z ⊕ D` and the twisted
//! subalgebra `T(mu)`.
//!
//! Central elements `t^s K_i` live in the Kähler quotient: for each `s ≠ 0`
//! the relation `sum_i s_i t^s K_i = 0` is used to eliminate `K_p` at the
//! largest index `p` with `s_p ≠ 0`. That normal form is applied on every
//! insertion, so structural equality is equality in the algebra.

use crate::error::{Error, Result};
use crate::liealg::{GConfig, GElem, RootSystem, Twist, TwistKind};
use crate::scalar::Scalar;
use num_rational::BigRational;
use num_traits::Zero;
use rand::Rng;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

pub type Mono = Vec<i64>;

pub fn mono_add(a: &[i64], b: &[i64]) -> Mono {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

#[derive(Clone, PartialEq, Eq, Default, Debug)]
pub struct LieElement {
    /// (monomial, g-basis index) -> coefficient
    pub loops: BTreeMap<(Mono, usize), Scalar>,
    /// (monomial, K index 0-based) -> coefficient, canonical
    pub central: BTreeMap<(Mono, usize), Scalar>,
    /// d index 0-based -> coefficient
    pub der: BTreeMap<usize, Scalar>,
}

fn bump<K: Ord + Clone>(m: &mut BTreeMap<K, Scalar>, k: K, c: &Scalar) {
    if c.is_zero() {
        return;
    }
    match m.get_mut(&k) {
        Some(v) => {
            *v += c;
            if v.is_zero() {
                m.remove(&k);
            }
        }
        None => {
            m.insert(k, c.clone());
        }
    }
}

impl LieElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn is_zero(&self) -> bool {
        self.loops.is_empty() && self.central.is_empty() && self.der.is_empty()
    }

    /// `x ⊗ t^m`
    pub fn loop_elem(x: &GElem, m: &[i64]) -> Self {
        let mut e = Self::zero();
        for (b, c) in &x.0 {
            bump(&mut e.loops, (m.to_vec(), *b), c);
        }
        e
    }

    /// `t^s K_i` (i 0-based), canonicalized
    pub fn central_elem(i: usize, s: &[i64]) -> Self {
        let mut e = Self::zero();
        e.add_central(s, i, &Scalar::one());
        e
    }

    pub fn der_elem(j: usize) -> Self {
        let mut e = Self::zero();
        e.der.insert(j, Scalar::one());
        e
    }

    pub fn add_loop(&mut self, m: &[i64], b: usize, c: &Scalar) {
        bump(&mut self.loops, (m.to_vec(), b), c);
    }

    /// add `c t^s K_i` and reduce modulo the Kähler relation
    pub fn add_central(&mut self, s: &[i64], i: usize, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        match s.iter().rposition(|x| *x != 0) {
            Some(p) if p == i => {
                // t^s K_p = -(1/s_p) sum_{j≠p} s_j t^s K_j
                let inv = Scalar::from_frac(-1, s[p]);
                for (j, sj) in s.iter().enumerate() {
                    if j != p && *sj != 0 {
                        bump(&mut self.central, (s.to_vec(), j), &(c * &inv).scale_int(*sj));
                    }
                }
            }
            _ => bump(&mut self.central, (s.to_vec(), i), c),
        }
    }

    pub fn add_der(&mut self, j: usize, c: &Scalar) {
        bump(&mut self.der, j, c);
    }

    pub fn add_assign(&mut self, o: &LieElement) {
        for ((m, b), c) in &o.loops {
            bump(&mut self.loops, (m.clone(), *b), c);
        }
        for ((m, i), c) in &o.central {
            // already canonical
            bump(&mut self.central, (m.clone(), *i), c);
        }
        for (j, c) in &o.der {
            bump(&mut self.der, *j, c);
        }
    }

    pub fn add(&self, o: &LieElement) -> LieElement {
        let mut r = self.clone();
        r.add_assign(o);
        r
    }

    pub fn sub(&self, o: &LieElement) -> LieElement {
        self.add(&o.scale(&Scalar::from_int(-1)))
    }

    pub fn scale(&self, s: &Scalar) -> LieElement {
        if s.is_zero() {
            return Self::zero();
        }
        LieElement {
            loops: self.loops.iter().map(|(k, c)| (k.clone(), c * s)).collect(),
            central: self.central.iter().map(|(k, c)| (k.clone(), c * s)).collect(),
            der: self.der.iter().map(|(k, c)| (*k, c * s)).collect(),
        }
    }

    pub fn neg(&self) -> LieElement {
        self.scale(&Scalar::from_int(-1))
    }

    /// multiply every monomial by `t^k` (loop and central parts)
    pub fn shift(&self, k: &[i64]) -> LieElement {
        let mut r = LieElement::zero();
        for ((m, b), c) in &self.loops {
            r.add_loop(&mono_add(m, k), *b, c);
        }
        for ((m, i), c) in &self.central {
            r.add_central(&mono_add(m, k), *i, c);
        }
        r.der = self.der.clone();
        r
    }

    /// g-component at a monomial
    pub fn loop_at(&self, m: &[i64]) -> GElem {
        let mut x = GElem::zero();
        for ((mm, b), c) in &self.loops {
            if mm.as_slice() == m {
                x.add_term(*b, c);
            }
        }
        x
    }

    pub fn loop_monomials(&self) -> Vec<Mono> {
        let mut v: Vec<Mono> = self.loops.keys().map(|(m, _)| m.clone()).collect();
        v.dedup();
        v
    }

    pub fn central_only(&self) -> LieElement {
        LieElement { central: self.central.clone(), ..Default::default() }
    }

    pub fn loops_only(&self) -> LieElement {
        LieElement { loops: self.loops.clone(), ..Default::default() }
    }
}

/// Weight in the basis `alpha_i (g0 simple roots), delta_j, gamma_j`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Weight {
    pub alpha: Vec<i64>,
    pub delta: Vec<i64>,
    pub gamma: Vec<i64>,
}

impl Weight {
    pub fn zero(ell: usize, n: usize) -> Self {
        Weight { alpha: vec![0; ell], delta: vec![0; n], gamma: vec![0; n] }
    }

    pub fn add(&self, o: &Weight) -> Weight {
        Weight {
            alpha: mono_add(&self.alpha, &o.alpha),
            delta: mono_add(&self.delta, &o.delta),
            gamma: mono_add(&self.gamma, &o.gamma),
        }
    }

    pub fn neg(&self) -> Weight {
        let n = |v: &Vec<i64>| v.iter().map(|x| -x).collect();
        Weight { alpha: n(&self.alpha), delta: n(&self.delta), gamma: n(&self.gamma) }
    }

    pub fn is_zero(&self) -> bool {
        self.alpha.iter().chain(&self.delta).chain(&self.gamma).all(|x| *x == 0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum RootClass {
    Positive,
    Negative,
    /// `delta_m` with `m_1 = 0`, `m ≠ 0`
    Null,
    NotARoot,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Part {
    Minus,
    Zero,
    Plus,
}

/// The ambient algebra `T` over `g` in `n` variables, with the twisting data.
#[derive(Clone, Debug)]
pub struct Toroidal {
    pub tw: Twist,
    pub n: usize,
    pub roots0: RootSystem,
    /// g0 weight of each g basis element
    basis_weight: Vec<Vec<i64>>,
}

impl Toroidal {
    pub fn new(cfg: GConfig, n: usize) -> Result<Self> {
        if n < 1 {
            return Err(Error::Invalid("need at least one variable".into()));
        }
        let tw = Twist::new(cfg)?;
        let roots0 = tw.g0_roots();
        let basis_weight = (0..tw.g.dim())
            .map(|b| tw.g0_weight(&GElem::basis(b)).expect("root vectors are h0-eigenvectors"))
            .collect();
        Ok(Toroidal { tw, n, roots0, basis_weight })
    }

    pub fn r(&self) -> usize {
        self.tw.r
    }

    pub fn ell(&self) -> usize {
        self.tw.ell
    }

    /// `[x, y]`, with the cocycle `(x|y) sum m_i t^{m+k} K_i` and derivations.
    pub fn bracket(&self, x: &LieElement, y: &LieElement) -> LieElement {
        let g = &self.tw.g;
        let mut out = LieElement::zero();
        for ((m, a), ca) in &x.loops {
            for ((k, b), cb) in &y.loops {
                let sum = mono_add(m, k);
                let c = ca * cb;
                for (idx, s) in g.bracket_basis(*a, *b) {
                    out.add_loop(&sum, *idx, &c.scale_int(*s));
                }
                let f = g.form_basis(*a, *b);
                if f != 0 {
                    for (i, mi) in m.iter().enumerate() {
                        if *mi != 0 {
                            out.add_central(&sum, i, &c.scale_int(f * mi));
                        }
                    }
                }
            }
        }
        for (j, cd) in &x.der {
            for ((k, b), cb) in &y.loops {
                out.add_loop(k, *b, &(cd * cb).scale_int(k[*j]));
            }
            for ((s, i), cb) in &y.central {
                out.add_central(s, *i, &(cd * cb).scale_int(s[*j]));
            }
        }
        for (j, cd) in &y.der {
            for ((k, b), ca) in &x.loops {
                out.add_loop(k, *b, &(cd * ca).scale_int(-k[*j]));
            }
            for ((s, i), ca) in &x.central {
                out.add_central(s, *i, &(cd * ca).scale_int(-s[*j]));
            }
        }
        out
    }

    /// `mu~ (x ⊗ t^s) = xi^{-s_1} mu(x) ⊗ t^s`, and likewise on `t^s K_i`.
    pub fn mu_tilde(&self, x: &LieElement) -> LieElement {
        let mut out = LieElement::zero();
        for ((m, b), c) in &x.loops {
            let f = &self.tw.xi(-m[0]) * c;
            for (k, s) in &self.tw.mu_table[*b] {
                out.add_loop(m, *k, &f.scale_int(*s));
            }
        }
        for ((m, i), c) in &x.central {
            out.add_central(m, *i, &(&self.tw.xi(-m[0]) * c));
        }
        out.der = x.der.clone();
        out
    }

    pub fn project_twisted(&self, x: &LieElement) -> LieElement {
        let mut acc = LieElement::zero();
        let mut y = x.clone();
        for _ in 0..self.r() {
            acc.add_assign(&y);
            y = self.mu_tilde(&y);
        }
        acc.scale(&Scalar::from_frac(1, self.r() as i64))
    }

    pub fn in_twisted(&self, x: &LieElement) -> bool {
        self.mu_tilde(x) == *x
    }

    pub fn g0_weight_of_basis(&self, b: usize) -> &[i64] {
        &self.basis_weight[b]
    }

    pub fn weight_of(&self, x: &LieElement) -> Result<Weight> {
        if x.is_zero() {
            return Err(Error::Invalid("zero element has no weight".into()));
        }
        let mut w: Option<Weight> = None;
        let mut push = |cand: Weight| -> Result<()> {
            match &w {
                None => {
                    w = Some(cand);
                    Ok(())
                }
                Some(v) if *v == cand => Ok(()),
                _ => Err(Error::NotHomogeneous),
            }
        };
        for (m, b) in x.loops.keys() {
            push(Weight { alpha: self.basis_weight[*b].clone(), delta: m.clone(), gamma: vec![0; self.n] })?;
        }
        for (s, _) in x.central.keys() {
            push(Weight { alpha: vec![0; self.ell()], delta: s.clone(), gamma: vec![0; self.n] })?;
        }
        if !x.der.is_empty() {
            push(Weight::zero(self.ell(), self.n))?;
        }
        Ok(w.expect("nonzero"))
    }

    /// Classification against the explicit root lists of `T(mu)`.
    pub fn root_membership(&self, w: &Weight) -> RootClass {
        let r = self.r() as i64;
        let m1 = w.delta[0];
        if w.gamma.iter().any(|x| *x != 0) {
            return RootClass::NotARoot;
        }
        let a = &w.alpha;
        let sign = |pos: bool| if pos { RootClass::Positive } else { RootClass::Negative };
        if a.iter().all(|x| *x == 0) {
            if w.delta.iter().all(|x| *x == 0) {
                return RootClass::NotARoot;
            }
            if m1 == 0 {
                return RootClass::Null;
            }
            return sign(m1 > 0);
        }
        let rs = &self.roots0;
        let in_list = if self.tw.kind == TwistKind::A2l {
            let half: Option<Vec<i64>> =
                if a.iter().all(|x| x % r == 0) { Some(a.iter().map(|x| x / r).collect()) } else { None };
            rs.is_root(a) || (m1.rem_euclid(r) != 0 && half.map_or(false, |h| rs.is_short_root(&h)))
        } else if m1.rem_euclid(r) == 0 {
            rs.is_root(a)
        } else {
            rs.is_short_root(a)
        };
        if !in_list {
            return RootClass::NotARoot;
        }
        if m1 != 0 {
            return sign(m1 > 0);
        }
        // m1 = 0: sign of the finite part
        let pos = a.iter().all(|x| *x >= 0);
        sign(pos)
    }

    /// Split an element of `T(mu)` along `T^- ⊕ T^0 ⊕ T^+`.
    pub fn triangular_part(&self, x: &LieElement) -> Result<[LieElement; 3]> {
        if !self.in_twisted(x) {
            return Err(Error::Invalid("element is not in T(mu)".into()));
        }
        let mut parts = [LieElement::zero(), LieElement::zero(), LieElement::zero()];
        let slot = |p: Part| match p {
            Part::Minus => 0,
            Part::Zero => 1,
            Part::Plus => 2,
        };
        for ((m, b), c) in &x.loops {
            let p = if m[0] > 0 {
                Part::Plus
            } else if m[0] < 0 {
                Part::Minus
            } else {
                let w = &self.basis_weight[*b];
                if w.iter().all(|v| *v == 0) {
                    Part::Zero
                } else if w.iter().all(|v| *v >= 0) {
                    Part::Plus
                } else {
                    Part::Minus
                }
            };
            parts[slot(p)].add_loop(m, *b, c);
        }
        for ((m, i), c) in &x.central {
            let p = match m[0].signum() {
                1 => Part::Plus,
                -1 => Part::Minus,
                _ => Part::Zero,
            };
            bump(&mut parts[slot(p)].central, (m.clone(), *i), c);
        }
        parts[1].der = x.der.clone();
        Ok(parts)
    }

    /// Membership in `T^+(mu)` (nonnegative powers of `t_2..t_n`).
    pub fn in_t_plus(&self, x: &LieElement) -> bool {
        if !self.in_twisted(x) {
            return false;
        }
        let nonneg = |m: &Mono| m[1..].iter().all(|v| *v >= 0);
        if !x.loops.keys().all(|(m, _)| nonneg(m)) {
            return false;
        }
        for (s, i) in x.central.keys() {
            if !nonneg(s) {
                return false;
            }
            if *i > 0 && s[*i] < 1 {
                return false;
            }
        }
        x.der.keys().all(|j| *j == 0)
    }

    /// Membership in `T-bar(mu)`: only `d_1` among derivations.
    pub fn in_t_bar(&self, x: &LieElement) -> bool {
        self.in_twisted(x) && x.der.keys().all(|j| *j == 0)
    }

    /// Membership in the affine subalgebra `T_aff(mu)`.
    pub fn in_t_aff(&self, x: &LieElement) -> bool {
        let only_t1 = |m: &Mono| m[1..].iter().all(|v| *v == 0);
        self.in_twisted(x)
            && x.loops.keys().all(|(m, _)| only_t1(m))
            && x.central.keys().all(|(s, i)| *i == 0 && s.iter().all(|v| *v == 0))
            && x.der.keys().all(|j| *j == 0)
    }

    /// Positive part of the affine triangular decomposition.
    pub fn in_t_aff_plus(&self, x: &LieElement) -> bool {
        if !self.in_t_aff(x) || !x.central.is_empty() || !x.der.is_empty() {
            return false;
        }
        x.loops.keys().all(|(m, b)| m[0] > 0 || (m[0] == 0 && self.basis_weight[*b].iter().all(|v| *v >= 0) && self.basis_weight[*b].iter().any(|v| *v > 0)))
    }

    pub fn unit(&self, j: usize) -> Mono {
        let mut m = vec![0; self.n];
        m[j] = 1;
        m
    }

    pub fn zero_mono(&self) -> Mono {
        vec![0; self.n]
    }

    /// `e_0`: `f^(1)_theta_s ⊗ t_1`, or `f'_theta0 ⊗ t_1` for A_{2l}
    pub fn e0(&self) -> LieElement {
        LieElement::loop_elem(&self.tw.lowest_generator(), &self.unit(0))
    }

    /// `f_0`: `e^(r-1)_theta_s ⊗ t_1^{-1}`, or `e'_theta0 ⊗ t_1^{-1}` for A_{2l}
    pub fn f0(&self) -> LieElement {
        let mut m = self.zero_mono();
        m[0] = -1;
        LieElement::loop_elem(&self.tw.highest_generator(), &m)
    }

    pub fn h0(&self) -> LieElement {
        self.bracket(&self.e0(), &self.f0())
    }

    /// `alpha_0 = delta_1 - theta^0`
    pub fn alpha0(&self) -> Weight {
        let mut w = Weight::zero(self.ell(), self.n);
        w.delta[0] = 1;
        let th = self.theta0_coords();
        w.alpha = th.iter().map(|x| -x).collect();
        w
    }

    /// `theta^0` in g0 simple-root coordinates (weight of `e'_theta0` on h0)
    pub fn theta0_coords(&self) -> Vec<i64> {
        self.tw.g0_weight(&self.tw.e_theta0).expect("weight vector")
    }

    pub fn render(&self, x: &LieElement) -> String {
        let mut parts: Vec<String> = Vec::new();
        let mono = |m: &Mono| m.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",");
        for ((m, b), c) in &x.loops {
            parts.push(format!("({c})·{}⊗t^({})", self.tw.g.label(*b), mono(m)));
        }
        for ((m, i), c) in &x.central {
            parts.push(format!("({c})·t^({})K{}", mono(m), i + 1));
        }
        for (j, c) in &x.der {
            parts.push(format!("({c})·d{}", j + 1));
        }
        if parts.is_empty() {
            "0".to_string()
        } else {
            parts.join(" ⊕ ")
        }
    }

    pub fn to_json(&self, x: &LieElement) -> serde_json::Value {
        let loops: Vec<_> = x
            .loops
            .iter()
            .map(|((m, b), c)| serde_json::json!({"basis": self.tw.g.label(*b), "mono": m, "coef": c.to_string()}))
            .collect();
        let central: Vec<_> = x
            .central
            .iter()
            .map(|((m, i), c)| serde_json::json!({"K": i + 1, "mono": m, "coef": c.to_string()}))
            .collect();
        let der: Vec<_> = x.der.iter().map(|(j, c)| serde_json::json!({"d": j + 1, "coef": c.to_string()})).collect();
        serde_json::json!({"loop": loops, "central": central, "der": der})
    }
}

impl Toroidal {
    /// A random nonzero homogeneous element of `T(mu)`: mostly twisted loop
    /// elements `x ⊗ t^m` with `|m_i| <= radius`, sometimes `t^s K_i` or `d_j`.
    pub fn sample_homogeneous<R: Rng>(&self, rng: &mut R, radius: i64) -> LieElement {
        loop {
            let m: Mono = (0..self.n).map(|_| rng.gen_range(-radius..=radius)).collect();
            let c = Scalar::from_int(rng.gen_range(1..=3) * if rng.gen_bool(0.5) { 1 } else { -1 });
            let roll = rng.gen_range(0..10);
            let x = if roll < 8 {
                let b = rng.gen_range(0..self.tw.g.dim());
                self.project_twisted(&LieElement::loop_elem(&GElem::basis(b), &m))
            } else if roll < 9 {
                let i = rng.gen_range(0..self.n);
                self.project_twisted(&LieElement::central_elem(i, &m))
            } else {
                LieElement::der_elem(rng.gen_range(0..self.n))
            };
            if !x.is_zero() {
                return x.scale(&c);
            }
        }
    }
}

/// Rational value of a scalar, for places where only rationals can occur.
pub fn rational(s: &Scalar) -> BigRational {
    s.to_rational().unwrap_or_else(BigRational::zero)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liealg::CartanType;

    #[test]
    fn kahler_relation() {
        let mut e = LieElement::zero();
        e.add_central(&[2, 1], 0, &Scalar::from_int(2));
        e.add_central(&[2, 1], 1, &Scalar::from_int(1));
        assert!(e.is_zero());
    }

    #[test]
    fn h_alpha_pairing() {
        let t = Toroidal::new(GConfig::new(CartanType::A, 3), 2).unwrap();
        let h = GElem::basis(t.tw.g.h(0));
        let x = LieElement::loop_elem(&h, &[1, 0]);
        let y = LieElement::loop_elem(&h, &[-1, 0]);
        let want = LieElement::central_elem(0, &[0, 0]).scale(&Scalar::from_int(2));
        assert_eq!(t.bracket(&x, &y), want);
    }
}
