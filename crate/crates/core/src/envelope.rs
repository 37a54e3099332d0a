//! Truncated `U(L(sl_2))` with PBW straightening, the Garland series and
//! identities, the `sym_Lambda` symmetrizers and the transport of loop `sl_2`
//! into `T(mu)` along a real affine root.

use crate::error::{Error, Result};
use crate::liealg::{GConfig, GElem};
use crate::scalar::Scalar;
use crate::toroidal::{LieElement, Mono, Toroidal};
use serde::Serialize;
use std::collections::BTreeMap;
use std::fmt;

/// Letter kinds in PBW order: `y < h < x`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Kind {
    Y,
    H,
    X,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Letter {
    pub kind: Kind,
    pub deg: i64,
}

pub fn y(a: i64) -> Letter {
    Letter { kind: Kind::Y, deg: a }
}
pub fn h(a: i64) -> Letter {
    Letter { kind: Kind::H, deg: a }
}
pub fn x(a: i64) -> Letter {
    Letter { kind: Kind::X, deg: a }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self.kind {
            Kind::Y => 'y',
            Kind::H => 'h',
            Kind::X => 'x',
        };
        write!(f, "{}{}", c, self.deg)
    }
}

/// `[a, b]` in `L(sl_2)` (no central term): a single letter with a coefficient.
fn letter_bracket(a: Letter, b: Letter) -> Option<(i64, Letter)> {
    let d = a.deg + b.deg;
    match (a.kind, b.kind) {
        (Kind::X, Kind::Y) => Some((1, h(d))),
        (Kind::Y, Kind::X) => Some((-1, h(d))),
        (Kind::H, Kind::X) => Some((2, x(d))),
        (Kind::X, Kind::H) => Some((-2, x(d))),
        (Kind::H, Kind::Y) => Some((-2, y(d))),
        (Kind::Y, Kind::H) => Some((2, y(d))),
        _ => None,
    }
}

/// Truncation budget: word length and absolute loop degree.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct Budget {
    pub max_len: usize,
    pub max_deg: i64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { max_len: 8, max_deg: 8 }
    }
}

pub type Word = Vec<Letter>;

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct PbwElement(pub BTreeMap<Word, Scalar>);

impl PbwElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        let mut m = BTreeMap::new();
        m.insert(Vec::new(), Scalar::one());
        PbwElement(m)
    }

    /// Single letter, or an already ordered word.
    pub fn word(w: &[Letter]) -> Self {
        let mut v = w.to_vec();
        v.sort();
        let mut m = BTreeMap::new();
        m.insert(v, Scalar::one());
        PbwElement(m)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn add_term(&mut self, w: Word, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        let e = self.0.entry(w).or_insert_with(Scalar::zero);
        *e += c;
        if e.is_zero() {
            let k: Vec<Word> = self.0.iter().filter(|(_, v)| v.is_zero()).map(|(k, _)| k.clone()).collect();
            for k in k {
                self.0.remove(&k);
            }
        }
    }

    pub fn add(&self, o: &PbwElement) -> PbwElement {
        let mut out = self.clone();
        for (w, c) in &o.0 {
            out.add_term(w.clone(), c);
        }
        out
    }

    pub fn scale(&self, s: &Scalar) -> PbwElement {
        if s.is_zero() {
            return PbwElement::zero();
        }
        PbwElement(self.0.iter().map(|(w, c)| (w.clone(), c * s)).collect())
    }

    pub fn sub(&self, o: &PbwElement) -> PbwElement {
        self.add(&o.scale(&Scalar::from_int(-1)))
    }

    /// Membership in the left ideal `U · L(C x)`: with `x` letters last in
    /// PBW order, that ideal is spanned by the words containing an `x`.
    pub fn in_left_ideal(&self) -> bool {
        self.0.keys().all(|w| w.iter().any(|l| l.kind == Kind::X))
    }

    /// Part of the element outside the left ideal.
    pub fn x_free_part(&self) -> PbwElement {
        PbwElement(self.0.iter().filter(|(w, _)| w.iter().all(|l| l.kind != Kind::X)).map(|(w, c)| (w.clone(), c.clone())).collect())
    }

    pub fn render(&self) -> String {
        if self.0.is_empty() {
            return "0".into();
        }
        self.0
            .iter()
            .map(|(w, c)| {
                let word: Vec<String> = w.iter().map(|l| l.to_string()).collect();
                let word = if word.is_empty() { "1".to_string() } else { word.join(" ") };
                format!("({})·{}", c, word)
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

/// Straightening multiplication in `U(L(sl_2))`.
pub struct Pbw {
    pub budget: Budget,
}

impl Pbw {
    pub fn new(budget: Budget) -> Self {
        Pbw { budget }
    }

    fn check(&self, w: &[Letter]) -> Result<()> {
        if w.len() > self.budget.max_len {
            return Err(Error::Budget(format!("word length {} > {}", w.len(), self.budget.max_len)));
        }
        if let Some(l) = w.iter().find(|l| l.deg.abs() > self.budget.max_deg) {
            return Err(Error::Budget(format!("letter {} exceeds degree {}", l, self.budget.max_deg)));
        }
        Ok(())
    }

    /// `l · w` for an ordered word `w`.
    fn letter_times_word(&self, l: Letter, w: &[Letter]) -> Result<PbwElement> {
        if w.is_empty() || l <= w[0] || l.kind == w[0].kind {
            // same-kind letters commute, so sorting is enough
            let mut v = Vec::with_capacity(w.len() + 1);
            v.push(l);
            v.extend_from_slice(w);
            v.sort();
            self.check(&v)?;
            let mut out = PbwElement::zero();
            out.add_term(v, &Scalar::one());
            return Ok(out);
        }
        // l w0 rest = w0 (l rest) + [l, w0] rest
        let head = w[0];
        let rest = &w[1..];
        let mut out = PbwElement::zero();
        let inner = self.letter_times_word(l, rest)?;
        for (v, c) in &inner.0 {
            let t = self.letter_times_word(head, v)?;
            out = out.add(&t.scale(c));
        }
        if let Some((k, b)) = letter_bracket(l, head) {
            out = out.add(&self.letter_times_word(b, rest)?.scale(&Scalar::from_int(k)));
        }
        Ok(out)
    }

    pub fn mul(&self, a: &PbwElement, b: &PbwElement) -> Result<PbwElement> {
        let mut out = PbwElement::zero();
        for (wa, ca) in &a.0 {
            for (wb, cb) in &b.0 {
                let mut acc = PbwElement::word(wb);
                self.check(wb)?;
                for l in wa.iter().rev() {
                    let mut next = PbwElement::zero();
                    for (v, c) in &acc.0 {
                        next = next.add(&self.letter_times_word(*l, v)?.scale(c));
                    }
                    acc = next;
                }
                out = out.add(&acc.scale(&(ca * cb)));
            }
        }
        Ok(out)
    }

    pub fn pow(&self, a: &PbwElement, k: usize) -> Result<PbwElement> {
        let mut out = PbwElement::one();
        for _ in 0..k {
            out = self.mul(&out, a)?;
        }
        Ok(out)
    }
}

/// `p^(0..=S)` from `s p^(s) = -sum_{k=1}^{s} h_k p^(s-k)`.
#[derive(Clone, Debug)]
pub struct GarlandSeries(pub Vec<PbwElement>);

pub fn garland_coeffs(s_max: usize, pbw: &Pbw) -> Result<GarlandSeries> {
    let mut p = vec![PbwElement::one()];
    for s in 1..=s_max {
        let mut acc = PbwElement::zero();
        for k in 1..=s {
            acc = acc.add(&pbw.mul(&PbwElement::word(&[h(k as i64)]), &p[s - k])?);
        }
        p.push(acc.scale(&Scalar::from_frac(-1, s as i64)));
    }
    Ok(GarlandSeries(p))
}

/// Normalization of the two identities.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum GarlandForm {
    /// plain powers, no sign: `x_1^j y_0^{j+1} - sum y_{j-m} p^(m)`
    Printed,
    /// divided powers `x^(j) = x^j / j!` with the sign `(-1)^j`
    DividedPower,
}

#[derive(Clone, Debug, Serialize)]
pub struct GarlandReport {
    pub j: usize,
    pub form: GarlandForm,
    pub first_holds: bool,
    pub second_holds: bool,
    /// part of the first difference outside the left ideal
    pub first_residue: String,
    pub second_residue: String,
}

fn factorial(n: usize) -> i64 {
    (1..=n as i64).product()
}

pub fn verify_garland(j: usize, form: GarlandForm, budget: Budget) -> Result<GarlandReport> {
    let pbw = Pbw::new(budget);
    let p = garland_coeffs(j + 1, &pbw)?;
    let x1 = PbwElement::word(&[x(1)]);
    let y0 = PbwElement::word(&[y(0)]);
    let yj1 = pbw.pow(&y0, j + 1)?;
    let lhs1 = pbw.mul(&pbw.pow(&x1, j)?, &yj1)?;
    let lhs2 = pbw.mul(&pbw.pow(&x1, j + 1)?, &yj1)?;
    let mut sum = PbwElement::zero();
    for m in 0..=j {
        sum = sum.add(&pbw.mul(&PbwElement::word(&[y((j - m) as i64)]), &p.0[m])?);
    }
    let (c1, c2) = match form {
        GarlandForm::Printed => (Scalar::one(), Scalar::one()),
        GarlandForm::DividedPower => {
            let sg = if j % 2 == 0 { 1 } else { -1 };
            (
                Scalar::from_int(sg * factorial(j) * factorial(j + 1)),
                Scalar::from_int(-sg * factorial(j + 1) * factorial(j + 1)),
            )
        }
    };
    let d1 = lhs1.sub(&sum.scale(&c1));
    let d2 = lhs2.sub(&p.0[j + 1].scale(&c2));
    Ok(GarlandReport {
        j,
        form,
        first_holds: d1.in_left_ideal(),
        second_holds: d2.in_left_ideal(),
        first_residue: d1.x_free_part().render(),
        second_residue: d2.x_free_part().render(),
    })
}

/// Pure tensors in `M^{⊗P}`, `M` = Laurent monomials in `t_2..t_n`.
pub type TensorWord = Vec<Mono>;

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct TensorElement(pub BTreeMap<TensorWord, i64>);

impl TensorElement {
    pub fn add_term(&mut self, w: TensorWord, c: i64) {
        let e = self.0.entry(w.clone()).or_insert(0);
        *e += c;
        if *e == 0 {
            self.0.remove(&w);
        }
    }

    /// slotwise product
    pub fn mul(&self, o: &TensorElement) -> TensorElement {
        let mut out = TensorElement::default();
        for (a, ca) in &self.0 {
            for (b, cb) in &o.0 {
                let w: TensorWord = a.iter().zip(b).map(|(u, v)| u.iter().zip(v).map(|(p, q)| p + q).collect()).collect();
                out.add_term(w, ca * cb);
            }
        }
        out
    }

    pub fn permute(&self, perm: &[usize]) -> TensorElement {
        let mut out = TensorElement::default();
        for (w, c) in &self.0 {
            let v: TensorWord = perm.iter().map(|&p| w[p].clone()).collect();
            out.add_term(v, *c);
        }
        out
    }
}

/// `sym^i_Lambda(b)`: `b` summed over the `a_i` slots of block `i`, `1`
/// elsewhere.
pub fn sym_lambda(counts: &[usize], i: usize, b: &[i64]) -> Result<TensorElement> {
    if i >= counts.len() || counts[i] == 0 {
        return Err(Error::Invalid(format!("block {} is empty", i)));
    }
    let total: usize = counts.iter().sum();
    let start: usize = counts[..i].iter().sum();
    let one = vec![0i64; b.len()];
    let mut out = TensorElement::default();
    for k in 0..counts[i] {
        let mut w = vec![one.clone(); total];
        w[start + k] = b.to_vec();
        out.add_term(w, 1);
    }
    Ok(out)
}

/// Invariance under every transposition inside every block.
pub fn is_block_symmetric(counts: &[usize], t: &TensorElement) -> bool {
    let total: usize = counts.iter().sum();
    let mut start = 0;
    for &a in counts {
        for p in start..start + a {
            for q in p + 1..start + a {
                let mut perm: Vec<usize> = (0..total).collect();
                perm.swap(p, q);
                if t.permute(&perm) != *t {
                    return false;
                }
            }
        }
        start += a;
    }
    true
}

/// The triple `{x^(m)_alpha ⊗ t_1^m, x^(r-m)_{-alpha} ⊗ t_1^{-m}, beta_0^vee}`
/// and the map `x ⊗ z^k -> X ⊗ b^k` from loop `sl_2`.
pub struct Sl2Transport {
    pub tor: Toroidal,
    pub m: i64,
    pub b: Vec<i64>,
    pub xa: GElem,
    pub ya: GElem,
}

impl Sl2Transport {
    /// `alpha` in `g_0` simple-root coordinates; `alpha + m delta_1` must be
    /// a real root.
    pub fn new(cfg: GConfig, n: usize, alpha: &[i64], m: i64, b: &[i64]) -> Result<Self> {
        let tor = Toroidal::new(cfg, n)?;
        if b.len() != n - 1 {
            return Err(Error::Invalid("b must have n - 1 exponents".into()));
        }
        let r = tor.r() as i64;
        let find = |grade: i64, wt: &[i64]| -> Option<GElem> {
            tor.tw.grade_basis(grade.rem_euclid(r) as usize).iter().find(|v| tor.tw.g0_weight(v).as_deref() == Some(wt)).cloned()
        };
        let neg: Vec<i64> = alpha.iter().map(|a| -a).collect();
        let xa = find(m, alpha).ok_or_else(|| Error::Invalid(format!("no root vector of weight {:?} in grade {}", alpha, m)))?;
        let ya = find(-m, &neg).ok_or_else(|| Error::Invalid("no opposite root vector".into()))?;
        // normalize so that [[x, y], x] = 2x
        let hxy = tor.tw.g.bracket(&xa, &ya);
        let hx = tor.tw.g.bracket(&hxy, &xa);
        let ev = tor.tw.eigenvalue(&hx, &xa).ok_or_else(|| Error::Invalid("not an sl2 pair".into()))?;
        let ya = ya.scale(&(Scalar::from_int(2) * ev.inv()?));
        Ok(Sl2Transport { tor, m, b: b.to_vec(), xa, ya })
    }

    fn mono(&self, first: i64, k: i64) -> Mono {
        let mut v = vec![first];
        v.extend(self.b.iter().map(|e| e * k));
        v
    }

    /// image of a loop `sl_2` letter
    pub fn map(&self, l: Letter) -> LieElement {
        let k = l.deg;
        match l.kind {
            Kind::X => LieElement::loop_elem(&self.xa, &self.mono(self.m, k)),
            Kind::Y => LieElement::loop_elem(&self.ya, &self.mono(-self.m, k)),
            Kind::H => {
                // beta_0^vee ⊗ b^k: [x ⊗ t_1^m, y ⊗ t_1^-m] shifted by b^k
                let mut e = LieElement::loop_elem(&self.tor.tw.g.bracket(&self.xa, &self.ya), &self.mono(0, k));
                let c = self.tor.tw.g.form(&self.xa, &self.ya).scale_int(self.m);
                e.add_central(&self.mono(0, k), 0, &c);
                e
            }
        }
    }

    /// Drops `t^s K_i` for `i >= 2`.
    pub fn modulo_k_rest(e: &LieElement) -> LieElement {
        let mut out = e.clone();
        out.central.retain(|(_, i), _| *i == 0);
        out
    }

    /// `psi[u, v] = [psi u, psi v]` modulo `K_i, i >= 2`, for all letters with
    /// `|deg| <= kmax`. Returns the first failing pair.
    pub fn verify(&self, kmax: i64) -> std::result::Result<usize, (Letter, Letter)> {
        let mut letters = Vec::new();
        for k in -kmax..=kmax {
            letters.extend([x(k), h(k), y(k)]);
        }
        let mut count = 0;
        for &u in &letters {
            for &v in &letters {
                let lhs = match letter_bracket(u, v) {
                    Some((c, w)) => self.map(w).scale(&Scalar::from_int(c)),
                    None => LieElement::zero(),
                };
                let rhs = self.tor.bracket(&self.map(u), &self.map(v));
                if Self::modulo_k_rest(&lhs) != Self::modulo_k_rest(&rhs) {
                    return Err((u, v));
                }
                count += 1;
            }
        }
        Ok(count)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn straightening_examples() {
        let pbw = Pbw::new(Budget::default());
        let p = pbw.mul(&PbwElement::word(&[x(1)]), &PbwElement::word(&[y(0)])).unwrap();
        let want = PbwElement::word(&[y(0), x(1)]).add(&PbwElement::word(&[h(1)]));
        assert_eq!(p, want);
        assert!(!p.in_left_ideal());
        assert!(PbwElement::word(&[y(0), x(1)]).in_left_ideal());
        assert!(!PbwElement::word(&[h(1), h(2)]).in_left_ideal());
        let a = PbwElement::word(&[h(1)]);
        assert_eq!(pbw.mul(&PbwElement::one(), &a).unwrap(), a);
        assert_eq!(pbw.mul(&a, &PbwElement::word(&[h(2)])).unwrap(), PbwElement::word(&[h(1), h(2)]));
    }

    #[test]
    fn series_low_terms() {
        let pbw = Pbw::new(Budget::default());
        let p = garland_coeffs(2, &pbw).unwrap();
        assert_eq!(p.0[0], PbwElement::one());
        assert_eq!(p.0[1], PbwElement::word(&[h(1)]).scale(&Scalar::from_int(-1)));
        let want = PbwElement::word(&[h(1), h(1)]).sub(&PbwElement::word(&[h(2)])).scale(&Scalar::from_frac(1, 2));
        assert_eq!(p.0[2], want);
    }

    #[test]
    fn sym_examples() {
        let s = sym_lambda(&[1], 0, &[1]).unwrap();
        assert_eq!(s.0.len(), 1);
        let s = sym_lambda(&[2], 0, &[1]).unwrap();
        let mut want = TensorElement::default();
        want.add_term(vec![vec![1], vec![0]], 1);
        want.add_term(vec![vec![0], vec![1]], 1);
        assert_eq!(s, want);
        assert!(is_block_symmetric(&[2], &s));
        assert!(sym_lambda(&[0, 1], 0, &[1]).is_err());
    }
}
