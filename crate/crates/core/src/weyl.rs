//! Weyl-module relation schemas, the highest-weight algebra descriptions, the
//! level-one relations checked in `T(mu)`, and the local Weyl character targets.

use crate::characters::{basic_char_product, freudenthal_basic, multivariate_factor, AffineRootData, CharacterSeries, Key};
use crate::envelope::{h, x, y, Budget, Pbw, PbwElement};
use crate::error::{Error, Result};
use crate::liealg::{GConfig, TwistKind};
use crate::toroidal::{LieElement, Toroidal};
use crate::Scalar;
use num_rational::Ratio;
use serde::Serialize;
use std::fmt;

/// `Lambda = sum_i a_i Lambda_i + shift delta_1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HighestWeight {
    pub coeffs: Vec<i64>,
    #[serde(serialize_with = "ratio_string")]
    pub shift: Ratio<i64>,
}

fn ratio_string<S: serde::Serializer>(q: &Ratio<i64>, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&q.to_string())
}

impl HighestWeight {
    pub fn new(coeffs: Vec<i64>, shift: Ratio<i64>) -> Result<Self> {
        if coeffs.iter().any(|a| *a < 0) {
            return Err(Error::Invalid("highest weight coefficients must be nonnegative".into()));
        }
        Ok(HighestWeight { coeffs, shift })
    }

    /// `Lambda_0` for a rank-`ell` finite part.
    pub fn basic(ell: usize) -> Self {
        let mut coeffs = vec![0; ell + 1];
        coeffs[0] = 1;
        HighestWeight { coeffs, shift: Ratio::from_integer(0) }
    }

    /// `Lambda(K) = sum_i a_i c_i` with dual labels `c`.
    pub fn level(&self, dual_labels: &[i64]) -> i64 {
        self.coeffs.iter().zip(dual_labels).map(|(a, c)| a * c).sum()
    }

    /// `Lambda(alpha_i^vee)`.
    pub fn pairing(&self, i: usize) -> i64 {
        self.coeffs[i]
    }

    pub fn total(&self) -> i64 {
        self.coeffs.iter().sum()
    }

    pub fn is_basic(&self) -> bool {
        self.coeffs[0] == 1 && self.coeffs[1..].iter().all(|a| *a == 0)
    }
}

/// Range of the `t^m` index in a schema line.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum IndexRange {
    /// no `t^m` index
    None,
    All,
    NonNegative,
    Positive,
}

impl fmt::Display for IndexRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            IndexRange::None => "",
            IndexRange::All => "m in Z^{n-1}",
            IndexRange::NonNegative => "m in Z^{n-1}_{>=0}",
            IndexRange::Positive => "m in Z^{n-1}_{>0}",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum SchemaRelation {
    /// `e_{i,m} v = 0`, i in 0..=ell
    Annihilation { nodes: usize, range: IndexRange },
    /// `h v = Lambda(h) v` for the Cartan of the affine subalgebra
    CartanEigen,
    /// `f_i^{a_i + 1} v = 0`
    Power { node: usize, exponent: i64 },
    /// `t^m K_i v = 0`, i = 2..n
    CentralKill { range: IndexRange },
    /// `d_i v = 0`, i = 2..n
    DerivationKill,
}

#[derive(Clone, Debug, Serialize)]
pub struct WeylPresentation {
    pub generator: String,
    pub weight: HighestWeight,
    pub n: usize,
    pub plus: bool,
    pub relations: Vec<SchemaRelation>,
}

impl WeylPresentation {
    /// The global Weyl module (`plus = false`) or its `T^+` version. The latter
    /// is generated by `v_Lambda^+` and every relation is stated for it.
    pub fn new(weight: HighestWeight, n: usize, plus: bool) -> Result<Self> {
        if n < 2 {
            return Err(Error::Invalid("need n >= 2".into()));
        }
        let nodes = weight.coeffs.len();
        let mut relations = vec![
            SchemaRelation::Annihilation { nodes, range: if plus { IndexRange::NonNegative } else { IndexRange::All } },
            SchemaRelation::CartanEigen,
        ];
        for (i, a) in weight.coeffs.iter().enumerate() {
            relations.push(SchemaRelation::Power { node: i, exponent: a + 1 });
        }
        relations.push(SchemaRelation::CentralKill { range: if plus { IndexRange::Positive } else { IndexRange::All } });
        if !plus {
            relations.push(SchemaRelation::DerivationKill);
        }
        let generator = if plus { "v_Lambda^+" } else { "v_Lambda" }.to_string();
        Ok(WeylPresentation { generator, weight, n, plus, relations })
    }

    pub fn render(&self) -> Vec<String> {
        let v = &self.generator;
        self.relations
            .iter()
            .map(|r| match r {
                SchemaRelation::Annihilation { nodes, range } => format!("e_(i,m) {} = 0, i = 0..{}, {}", v, nodes - 1, range),
                SchemaRelation::CartanEigen => format!("h {} = Lambda(h) {}, h in T_aff^0", v, v),
                SchemaRelation::Power { node, exponent } => format!("f_{}^{} {} = 0", node, exponent, v),
                SchemaRelation::CentralKill { range } => format!("t^m K_i {} = 0, i = 2..{}, {}", v, self.n, range),
                SchemaRelation::DerivationKill => format!("d_i {} = 0, i = 2..{}", v, self.n),
            })
            .collect()
    }
}

/// `B(Lambda) = (M^{(x) a_0})^{S_{a_0}} (x) ... (x) (M^{(x) a_ell})^{S_{a_ell}}`,
/// `M = C[t_2^{+-1}..t_n^{+-1}]` (or polynomials for the `+` version).
#[derive(Clone, Debug, Serialize)]
pub struct InvariantAlgebra {
    pub weight: HighestWeight,
    pub n: usize,
    pub plus: bool,
}

impl InvariantAlgebra {
    pub fn new(weight: HighestWeight, n: usize, plus: bool) -> Self {
        InvariantAlgebra { weight, n, plus }
    }

    /// Number of tensor factors `P`.
    pub fn factors(&self) -> i64 {
        self.weight.total()
    }

    pub fn describe(&self) -> String {
        let ring = self.ring("t");
        let blocks: Vec<String> = self
            .weight
            .coeffs
            .iter()
            .filter(|a| **a > 0)
            .map(|a| if *a == 1 { ring.clone() } else { format!("({}^(x){})^S_{}", ring, a, a) })
            .collect();
        if self.factors() == 1 {
            // level one: the symmetrization is trivial
            return self.ring("y");
        }
        blocks.join(" (x) ")
    }

    fn ring(&self, var: &str) -> String {
        let vars: Vec<String> = (2..=self.n)
            .map(|j| if self.plus { format!("{}{}", var, j) } else { format!("{}{}^(+-1)", var, j) })
            .collect();
        format!("C[{}]", vars.join(","))
    }

    /// Generators `sym^i(t_j^q)`, `|q| <= a_i`, `q != 0` (nonnegative for `+`),
    /// as `(i, j, q)`.
    pub fn generators(&self) -> Vec<(usize, usize, i64)> {
        let mut out = Vec::new();
        for (i, a) in self.weight.coeffs.iter().enumerate() {
            for j in 2..=self.n {
                let lo = if self.plus { 1 } else { -a };
                for q in lo..=*a {
                    if q != 0 {
                        out.push((i, j, q));
                    }
                }
            }
        }
        out
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RelationLine {
    pub statement: String,
    pub checked: usize,
    pub passed: usize,
}

impl RelationLine {
    pub fn ok(&self) -> bool {
        self.checked == self.passed
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct LevelOneReport {
    pub algebra: String,
    pub n: usize,
    /// the relation list holding in the local `+` module at `b = 0`
    pub schema: Vec<String>,
    pub checks: Vec<RelationLine>,
}

impl LevelOneReport {
    pub fn ok(&self) -> bool {
        self.checks.iter().all(|c| c.ok())
    }
}

fn nonneg_box(n: usize, radius: i64) -> Vec<Vec<i64>> {
    let mut pts = vec![vec![]];
    for _ in 1..n {
        pts = pts.iter().flat_map(|p: &Vec<i64>| (0..=radius).map(move |c| [p.clone(), vec![c]].concat())).collect();
    }
    pts
}

/// The level-one relation list and the bracket identities behind it, over
/// exponents `m` in `{0..radius}^{n-1}`.
pub fn level_one_relations(cfg: GConfig, n: usize, radius: i64) -> Result<LevelOneReport> {
    let tor = Toroidal::new(cfg, n)?;
    let r = tor.r() as i64;
    let schema = vec![
        "e_(i,m) v0 = 0, i = 0..ell, m >= 0".to_string(),
        "h v0 = Lambda_0(h) v0, h in T_aff^0".to_string(),
        "h_(i,m) v0 = 0, f_(i,m) v0 = 0, i = 1..ell, m >= 0".to_string(),
        "f_i v0 = 0, i = 1..ell".to_string(),
        "f_0^2 v0 = 0".to_string(),
        "h_(0,m) v0 = 0, m >= 0, m != 0".to_string(),
        "0 = [e_(0,m), f_0^2] v0 = (-2 f_(0,m) + 2 f_0 h_(0,m)) v0".to_string(),
        "f_(0,m) v0 = 0, m >= 0, m != 0".to_string(),
    ];
    let full = |m: &[i64]| -> Vec<i64> { [vec![0], m.to_vec()].concat() };
    let e0 = tor.e0();
    let f0 = tor.f0();
    let h0 = tor.h0();
    let mut checks = Vec::new();
    let mut line = |statement: &str, results: Vec<bool>| {
        checks.push(RelationLine {
            statement: statement.to_string(),
            checked: results.len(),
            passed: results.iter().filter(|b| **b).count(),
        });
    };
    let pts = nonneg_box(n, radius);

    // h_0 against the image of alpha_0: -h_theta ⊗ 1 + r K_1
    if tor.tw.kind != TwistKind::A2l {
        let mut want = LieElement::loop_elem(&tor.tw.h_th[0].neg(), &tor.zero_mono());
        want.add_central(&tor.zero_mono(), 0, &Scalar::from_int(r));
        line("[e_0, f_0] = -h_theta (x) 1 + r K_1", vec![h0 == want]);
    }
    let mut a = Vec::new();
    let mut b = Vec::new();
    for m in &pts {
        let em = e0.shift(&full(m));
        let fm = f0.shift(&full(m));
        let hm = h0.shift(&full(m));
        a.push(tor.bracket(&em, &f0) == hm);
        b.push(tor.bracket(&hm, &f0) == fm.scale(&Scalar::from_int(-2)));
    }
    line("[e_(0,m), f_0] = h_(0,m)", a);
    line("[h_(0,m), f_0] = -2 f_(0,m)", b);

    // the sl_2 loop straightening of [x_m, y_0^2]
    let pbw = Pbw::new(Budget { max_len: 4, max_deg: radius + 2 });
    let mut c = Vec::new();
    for m in 0..=radius {
        let xm = PbwElement::word(&[x(m)]);
        let y2 = pbw.mul(&PbwElement::word(&[y(0)]), &PbwElement::word(&[y(0)]))?;
        let comm = pbw.mul(&xm, &y2)?.sub(&pbw.mul(&y2, &xm)?);
        let want = PbwElement::word(&[y(m)])
            .scale(&Scalar::from_int(-2))
            .add(&PbwElement::word(&[y(0), h(m)]).scale(&Scalar::from_int(2)));
        c.push(comm == want);
    }
    line("[x_m, y_0^2] = -2 y_m + 2 y_0 h_m", c);

    // Lambda_0(h_0) = 1 and level one
    let data = AffineRootData::new(cfg);
    if let Ok(d) = data {
        let l0 = HighestWeight::basic(d.ell());
        line("Lambda_0(h_0) = 1, level 1", vec![l0.pairing(0) == 1 && l0.level(&d.dual_labels()) == 1]);
    }
    Ok(LevelOneReport { algebra: cfg.name(), n, schema, checks })
}

/// Source of `ch_{q_1} L(Lambda_0)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ChSource {
    /// `prod_p (1-q_1^p)^{-mult p delta_1}`
    Product,
    /// the graded dimension from the Freudenthal table
    Freudenthal,
}

/// `ch_{q_1} L(Lambda_0)` with empty weights.
pub fn basic_q1_character(cfg: GConfig, depth: i64, source: ChSource) -> Result<CharacterSeries> {
    match source {
        ChSource::Product => basic_char_product(cfg, depth)?.forget_weights(),
        ChSource::Freudenthal => {
            let d = AffineRootData::new(cfg)?;
            freudenthal_basic(cfg, depth)?.to_series(d.ell())?.forget_weights()
        }
    }
}

/// `(q_1 target, multivariate target)` of the level-one local Weyl module:
/// `ch L(Lambda_0) prod_s (1-q_1^s)^{-(n-1)}` and
/// `ch L(Lambda_0) prod_{s>0, i=2..n} 1/(1-q_1^s q_i)`.
pub fn weyl_character_target(cfg: GConfig, n: usize, depth: i64, pbox: i64, source: ChSource) -> Result<(CharacterSeries, CharacterSeries)> {
    if n < 2 {
        return Err(Error::Invalid("need n >= 2".into()));
    }
    let ch = basic_q1_character(cfg, depth, source)?;
    let q1 = ch.mul(&crate::characters::eta_power(n - 1, 0, depth, 0)?)?;
    let mut chm = CharacterSeries::zero(0, n - 1, depth, pbox);
    for (k, c) in &ch.terms {
        chm.add_term(Key { m: k.m, lambda: vec![], p: vec![0; n - 1] }, *c)?;
    }
    let multi = chm.mul(&multivariate_factor(n - 1, depth, pbox)?)?;
    Ok((q1, multi))
}

/// The upper bound for the `+` module, assembled as `ch L(Lambda_0)` times
/// `(prod_{p>0} 1/(1-q_1^p))^{n-1}` one factor at a time.
pub fn upper_bound_q1(cfg: GConfig, n: usize, depth: i64, source: ChSource) -> Result<CharacterSeries> {
    let mut out = basic_q1_character(cfg, depth, source)?;
    for _ in 1..n {
        for p in 1..=depth {
            out = out.mul(&out.inv_one_minus(&Key { m: p, lambda: vec![], p: vec![] }, 1)?)?;
        }
    }
    Ok(out)
}

/// The multivariate target with finite weights kept: the Freudenthal
/// character of `L(Lambda_0)` times `prod_{s>0, i=2..n} 1/(1-q_1^s q_i)`.
pub fn weighted_character_target(cfg: GConfig, n: usize, depth: i64, pbox: i64) -> Result<CharacterSeries> {
    if n < 2 {
        return Err(Error::Invalid("need n >= 2".into()));
    }
    let d = AffineRootData::new(cfg)?;
    let ell = d.ell();
    let table = freudenthal_basic(cfg, depth)?;
    let mut ch = CharacterSeries::zero(ell, n - 1, depth, pbox);
    for ((m, l), c) in &table.mults {
        ch.add_term(Key { m: *m, lambda: l.clone(), p: vec![0; n - 1] }, *c)?;
    }
    let f = multivariate_factor(n - 1, depth, pbox)?;
    let mut fw = CharacterSeries::zero(ell, n - 1, depth, pbox);
    for (k, c) in &f.terms {
        fw.add_term(Key { m: k.m, lambda: vec![0; ell], p: k.p.clone() }, *c)?;
    }
    ch.mul(&fw)
}
