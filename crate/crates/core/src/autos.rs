//! `exp ad` automorphisms of `T(mu)`: `Psi_0` built from the affine
//! Chevalley generators and `Psi_theta_s` from the `g_0` part, plus the
//! identities relating them on `e^(j)_theta_s ⊗ t^m`.

use crate::error::{Error, Result};
use crate::liealg::{GConfig, TwistKind};
use crate::presentation::exponent_box;
use crate::scalar::Scalar;
use crate::toroidal::{LieElement, Mono, Toroidal};
use serde::Serialize;

pub const DEFAULT_CAP: usize = 8;

/// `exp ad z`, truncated at the first vanishing power (at most `cap` terms).
#[derive(Clone, Debug)]
pub struct AdExp {
    pub z: LieElement,
    pub cap: usize,
}

impl AdExp {
    pub fn new(z: LieElement) -> Self {
        AdExp { z, cap: DEFAULT_CAP }
    }

    pub fn apply(&self, tor: &Toroidal, x: &LieElement) -> Result<LieElement> {
        let mut out = x.clone();
        let mut term = x.clone();
        for k in 1..=self.cap {
            term = tor.bracket(&self.z, &term).scale(&Scalar::from_frac(1, k as i64));
            if term.is_zero() {
                return Ok(out);
            }
            out.add_assign(&term);
        }
        Err(Error::AdExpCap(self.cap))
    }
}

/// Product of exponentials, written left to right and applied right to left.
#[derive(Clone, Debug)]
pub struct Composite(pub Vec<AdExp>);

impl Composite {
    /// `exp ad(e) exp ad(-f) exp ad(e)`
    pub fn reflection(e: &LieElement, f: &LieElement) -> Self {
        Composite(vec![AdExp::new(e.clone()), AdExp::new(f.neg()), AdExp::new(e.clone())])
    }

    pub fn then(&self, other: &Composite) -> Composite {
        let mut v = self.0.clone();
        v.extend(other.0.iter().cloned());
        Composite(v)
    }

    pub fn apply(&self, tor: &Toroidal, x: &LieElement) -> Result<LieElement> {
        let mut y = x.clone();
        for a in self.0.iter().rev() {
            y = a.apply(tor, &y)?;
        }
        Ok(y)
    }
}

pub struct Autos {
    pub tor: Toroidal,
    pub psi0: Composite,
    pub psi_theta: Composite,
}

#[derive(Clone, Debug, Serialize)]
pub struct Failure {
    pub point: String,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct IdentityReport {
    pub name: String,
    pub checked: usize,
    pub passed: usize,
    pub first_failure: Option<Failure>,
}

impl IdentityReport {
    fn new(name: &str) -> Self {
        IdentityReport { name: name.to_string(), checked: 0, passed: 0, first_failure: None }
    }

    fn record(&mut self, tor: &Toroidal, point: String, lhs: &LieElement, rhs: &LieElement) {
        self.checked += 1;
        if lhs == rhs {
            self.passed += 1;
        } else if self.first_failure.is_none() {
            self.first_failure = Some(Failure { point, lhs: tor.render(lhs), rhs: tor.render(rhs) });
        }
    }

    pub fn ok(&self) -> bool {
        self.checked == self.passed
    }
}

impl Autos {
    pub fn new(cfg: GConfig, n: usize) -> Result<Self> {
        let tor = Toroidal::new(cfg, n)?;
        if tor.tw.kind == TwistKind::A2l {
            return Err(Error::UnsupportedType(format!("{} (no theta_s twisted sums)", cfg.name())));
        }
        let psi0 = Composite::reflection(&tor.e0(), &tor.f0());
        let z = tor.zero_mono();
        let e = LieElement::loop_elem(&tor.tw.e_th[0], &z);
        let f = LieElement::loop_elem(&tor.tw.f_th[0], &z);
        let psi_theta = Composite::reflection(&e, &f);
        Ok(Autos { tor, psi0, psi_theta })
    }

    pub fn r(&self) -> i64 {
        self.tor.r() as i64
    }

    /// `Psi_0 Psi_theta_s`
    pub fn psi(&self) -> Composite {
        self.psi0.then(&self.psi_theta)
    }

    fn mono(&self, m1: i64, m: &[i64]) -> Mono {
        let mut v = vec![m1];
        v.extend_from_slice(m);
        v
    }

    /// `e^(k)_theta_s ⊗ t^mono`, superscript read mod r
    pub fn e_th(&self, k: i64, mono: &[i64]) -> LieElement {
        LieElement::loop_elem(&self.tor.tw.e_th[k.rem_euclid(self.r()) as usize], mono)
    }

    pub fn f_th(&self, k: i64, mono: &[i64]) -> LieElement {
        LieElement::loop_elem(&self.tor.tw.f_th[k.rem_euclid(self.r()) as usize], mono)
    }

    fn grid(&self, m1_range: i64, radius: i64) -> Vec<(i64, i64, Vec<i64>)> {
        let mut out = Vec::new();
        for j in 0..self.r() {
            for m1 in -m1_range..=m1_range {
                for m in exponent_box(self.tor.n - 1, radius) {
                    out.push((j, m1, m));
                }
            }
        }
        out
    }

    /// `Psi_0 Psi_theta_s (e^(j) ⊗ t_1^{r m1 + j} t^m) = e^(r+j-2) ⊗ t_1^{r m1 + j - 2} t^m`
    pub fn verify_rp1(&self, m1_range: i64, radius: i64) -> Result<IdentityReport> {
        let mut rep = IdentityReport::new("rp1");
        let psi = self.psi();
        for (j, m1, m) in self.grid(m1_range, radius) {
            let r = self.r();
            let x = self.e_th(j, &self.mono(r * m1 + j, &m));
            let lhs = psi.apply(&self.tor, &x)?;
            let rhs = self.e_th(r + j - 2, &self.mono(r * m1 + j - 2, &m));
            rep.record(&self.tor, format!("j={} m1={} m={:?}", j, m1, m), &lhs, &rhs);
        }
        Ok(rep)
    }

    /// `Psi_theta_s (e^(j) ⊗ t_1^{r m1 + j} t^m) = -f^(j) ⊗ t_1^{r m1 + j} t^m`
    pub fn verify_psi_theta_image(&self, m1_range: i64, radius: i64) -> Result<IdentityReport> {
        let mut rep = IdentityReport::new("psi-theta-image");
        for (j, m1, m) in self.grid(m1_range, radius) {
            let mono = self.mono(self.r() * m1 + j, &m);
            let lhs = self.psi_theta.apply(&self.tor, &self.e_th(j, &mono))?;
            let rhs = self.f_th(j, &mono).neg();
            rep.record(&self.tor, format!("j={} m1={} m={:?}", j, m1, m), &lhs, &rhs);
        }
        Ok(rep)
    }

    /// `Psi_0 (f^(j) ⊗ t_1^{r m1 + j} t^m) = -e^(k) ⊗ t_1^{r m1 + j - 2} t^m`
    /// with `k = r - j` (`printed = true`) or `k = j - 2 mod r`, the only
    /// superscript compatible with the `t_1` exponent.
    pub fn verify_psi0_image(&self, m1_range: i64, radius: i64, printed: bool) -> Result<IdentityReport> {
        let mut rep = IdentityReport::new(if printed { "psi0-image-printed" } else { "psi0-image-graded" });
        let r = self.r();
        for (j, m1, m) in self.grid(m1_range, radius) {
            let lhs = self.psi0.apply(&self.tor, &self.f_th(j, &self.mono(r * m1 + j, &m)))?;
            let k = if printed { r - j } else { j - 2 };
            let rhs = self.e_th(k, &self.mono(r * m1 + j - 2, &m)).neg();
            rep.record(&self.tor, format!("j={} m1={} m={:?}", j, m1, m), &lhs, &rhs);
        }
        Ok(rep)
    }

    /// `[e^(r-1), f^(j)] = -[f^(1), e^(k)]` in g, with `k = r - j` as printed
    /// or `k = r + j - 2`.
    pub fn verify_twisted_bracket(&self, printed: bool) -> IdentityReport {
        let mut rep = IdentityReport::new(if printed { "twisted-bracket-printed" } else { "twisted-bracket-graded" });
        let r = self.r();
        let z = self.tor.zero_mono();
        for j in 0..r {
            let lhs = self.tor.bracket(&self.e_th(r - 1, &z), &self.f_th(j, &z));
            let k = if printed { r - j } else { r + j - 2 };
            let rhs = self.tor.bracket(&self.f_th(1, &z), &self.e_th(k, &z)).neg();
            rep.record(&self.tor, format!("j={}", j), &lhs, &rhs);
        }
        rep
    }

    /// `t_1^{-rl} t^{m + e_i} K_i = (1/r)([f^(0) ⊗ t_i, e^(0) ⊗ t_1^{-rl} t^m] - [f^(0), e^(0) ⊗ t_1^{-rl} t^{m + e_i}])`
    /// for `l` in range, `m` in the nonnegative box and `i = 2..n`.
    pub fn verify_central_from_brackets(&self, l_range: i64, radius: i64) -> IdentityReport {
        let mut rep = IdentityReport::new("central-from-brackets");
        let r = self.r();
        let z = self.tor.zero_mono();
        let f0 = self.f_th(0, &z);
        for l in -l_range..=l_range {
            for m in exponent_box(self.tor.n - 1, radius) {
                if m.iter().any(|x| *x < 0) {
                    continue;
                }
                for i in 1..self.tor.n {
                    let mut ti = z.clone();
                    ti[i] = 1;
                    let base = self.mono(-r * l, &m);
                    let mut shifted = base.clone();
                    shifted[i] += 1;
                    let mut lhs = LieElement::zero();
                    lhs.add_central(&shifted, i, &Scalar::one());
                    let a = self.tor.bracket(&self.f_th(0, &ti), &self.e_th(0, &base));
                    let b = self.tor.bracket(&f0, &self.e_th(0, &shifted));
                    let rhs = a.sub(&b).scale(&Scalar::from_frac(1, r));
                    rep.record(&self.tor, format!("l={} m={:?} i={}", l, m, i + 1), &lhs, &rhs);
                }
            }
        }
        rep
    }

    /// `(f^(r-1)_theta_s | e^(1)_theta_s)`
    pub fn theta_pairing(&self) -> Scalar {
        let r = self.tor.r();
        self.tor.tw.g.form(&self.tor.tw.f_th[r - 1], &self.tor.tw.e_th[1 % r])
    }

    /// `Psi([x, y]) = [Psi x, Psi y]` on `pairs` seeded random pairs.
    pub fn verify_automorphism(&self, which: &Composite, name: &str, pairs: usize, seed: u64) -> Result<IdentityReport> {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let mut rep = IdentityReport::new(name);
        for t in 0..pairs {
            let x = self.tor.sample_homogeneous(&mut rng, 2);
            let y = self.tor.sample_homogeneous(&mut rng, 2);
            let lhs = which.apply(&self.tor, &self.tor.bracket(&x, &y))?;
            let rhs = self.tor.bracket(&which.apply(&self.tor, &x)?, &which.apply(&self.tor, &y)?);
            rep.record(&self.tor, format!("pair {}", t), &lhs, &rhs);
        }
        Ok(rep)
    }

    /// `Psi_theta_s^2 x = (-1)^{<wt x, theta_s^vee>} x` for homogeneous `x`.
    pub fn verify_theta_square(&self, samples: usize, seed: u64) -> Result<IdentityReport> {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let mut rep = IdentityReport::new("psi-theta-square");
        let h = LieElement::loop_elem(&self.tor.tw.h_th[0], &self.tor.zero_mono());
        let sq = self.psi_theta.then(&self.psi_theta);
        for t in 0..samples {
            let x = self.tor.sample_homogeneous(&mut rng, 2);
            if !x.der.is_empty() {
                continue;
            }
            let hx = self.tor.bracket(&h, &x);
            let ev = if hx.is_zero() {
                0
            } else {
                let (key, c) = x.loops.iter().next().expect("loop part");
                (hx.loops.get(key).cloned().unwrap_or_else(Scalar::zero) * c.inv()?).to_i64().expect("integral weight")
            };
            let want = if ev % 2 == 0 { x.clone() } else { x.neg() };
            rep.record(&self.tor, format!("sample {}", t), &sq.apply(&self.tor, &x)?, &want);
        }
        Ok(rep)
    }
}
