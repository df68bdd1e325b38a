//! Bundled quivers, presentations and the verification suites built on them.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::{anick_defect, brute_algebra_matrix, brute_cyclic_dims, compute_l_circ, Presentation};
use crate::datum::VLDatum;
use crate::error::{Error, Result};
use crate::monomial::{admissible_search, random_strongly_free, Admissibility, MonomialPresentation};
use crate::prepro::{
    a_g_n_circ_check, affine_family, affine_identity_all, affine_shape, dynkin_d_polynomial, molien_check,
    partial_preprojective, partial_presentation, preprojective_datum, FiniteSubgroupSL2, GroupKind, IdentityReport,
};
use crate::quiver::{shapes, Quiver};
use crate::series::{infinite_product_zeta, MatSeries, TruncSeries};

pub const DEFAULT_SEED: u64 = 20_240_601;

/// Wild quivers whose preprojective algebras are checked against the oracle.
pub fn wild_quivers() -> Vec<(&'static str, Quiver)> {
    let mut k3 = Quiver::with_vertices(2);
    for _ in 0..3 {
        k3.add_edge(0, 1, 1);
    }
    let mut triangle = Quiver::with_vertices(3);
    for (t, h) in [(0, 1), (0, 1), (1, 2), (2, 0)] {
        triangle.add_edge(t, h, 1);
    }
    let mut loop_edge = Quiver::with_vertices(2);
    loop_edge.add_edge(0, 0, 1);
    loop_edge.add_edge(0, 1, 1);
    vec![
        ("two loops", shapes::loops(2)),
        ("two vertices, three edges", k3),
        ("triangle with a doubled edge", triangle),
        ("star with five spokes", shapes::star(5)),
        ("loop plus an edge", loop_edge),
    ]
}

/// Monomial presentations in two letters of degree 1: the fixed list followed by
/// `random` seeded strongly-free sets with words of length at most 6.
pub fn monomial_catalog(random: usize, seed: u64) -> Vec<(String, MonomialPresentation)> {
    let fixed: [&[&str]; 4] = [&["xy"], &["xxyy"], &["xxyy", "xyxyy"], &["xxxy"]];
    let mut out: Vec<(String, MonomialPresentation)> = fixed
        .iter()
        .map(|ws| (format!("{{{}}}", ws.join(", ")), MonomialPresentation::parse(&[1, 1], ws).expect("bundled words")))
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for (k, p) in random_strongly_free(&mut rng, 2, 6, random).into_iter().enumerate() {
        let words: Vec<String> = p.relations().iter().map(|w| p.format_word(w)).collect();
        out.push((format!("random {k}: {{{}}}", words.join(", ")), p));
    }
    out
}

/// Every datum the bundled suites touch.
pub fn datum_catalog() -> Result<Vec<(String, VLDatum)>> {
    let mut out = Vec::new();
    for (name, q) in wild_quivers() {
        out.push((format!("preprojective, {name}"), preprojective_datum(&q)?));
    }
    for shape in affine_family() {
        out.push((format!("preprojective ~{shape}"), preprojective_datum(&affine_shape(shape)?.0)?));
    }
    for (name, p) in monomial_catalog(5, DEFAULT_SEED) {
        out.push((format!("monomial {name}"), p.to_datum()));
    }
    out.push(("free, one loop".into(), VLDatum::from_presentation(Presentation::free(shapes::loops(1)), 4)));
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Affine,
    Dtable,
    Molien,
    Oracle,
    Monomial,
    Partial,
    Super,
    Riemsur,
}

impl Suite {
    pub const ALL: [Suite; 8] = [
        Suite::Affine,
        Suite::Dtable,
        Suite::Molien,
        Suite::Oracle,
        Suite::Monomial,
        Suite::Partial,
        Suite::Super,
        Suite::Riemsur,
    ];

    /// Order used when the caller does not give one.
    pub fn default_order(self) -> usize {
        match self {
            Suite::Affine => 30,
            Suite::Dtable => 0,
            Suite::Molien => 24,
            Suite::Oracle => 6,
            Suite::Monomial => 12,
            Suite::Partial => 5,
            Suite::Super => 50,
            Suite::Riemsur => 10,
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Suite::Affine => "affine",
            Suite::Dtable => "dtable",
            Suite::Molien => "molien",
            Suite::Oracle => "oracle",
            Suite::Monomial => "monomial",
            Suite::Partial => "partial",
            Suite::Super => "super",
            Suite::Riemsur => "riemsur",
        };
        f.write_str(s)
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.to_string() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown suite {s:?}")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub suite: Suite,
    pub name: String,
    pub passed: bool,
    pub order: usize,
    /// First weight where the two sides differ.
    pub first_diff: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl Check {
    fn from_report(suite: Suite, name: String, rep: &IdentityReport) -> Self {
        let detail = rep.first_diff.map(|k| format!("lhs {} vs rhs {}", rep.lhs.coeff(k), rep.rhs.coeff(k)));
        Check { suite, name, passed: rep.equal, order: rep.order, first_diff: rep.first_diff, detail }
    }

    fn series(suite: Suite, name: String, lhs: &TruncSeries, rhs: &TruncSeries) -> Self {
        Self::from_report(suite, name, &IdentityReport::compare("", None, lhs.clone(), rhs.clone()))
    }

    fn matrix(suite: Suite, name: String, lhs: &MatSeries, rhs: &MatSeries) -> Result<Self> {
        let order = lhs.order().min(rhs.order());
        let diff = lhs.truncate(order).sub(&rhs.truncate(order))?;
        Ok(match diff.first_nonzero() {
            None => Check { suite, name, passed: true, order, first_diff: None, detail: None },
            Some((k, i, j, _)) => Check {
                suite,
                name,
                passed: false,
                order,
                first_diff: Some(k),
                detail: Some(format!(
                    "entry ({i},{j}): lhs {} vs rhs {}",
                    lhs.get(i, j).coeff(k),
                    rhs.get(i, j).coeff(k)
                )),
            },
        })
    }

    fn flag(suite: Suite, name: String, passed: bool, detail: Option<String>) -> Self {
        Check { suite, name, passed, order: 0, first_diff: None, detail }
    }
}

#[derive(Clone, Debug)]
pub struct VerifyConfig {
    pub order: Option<usize>,
    pub path_cap: usize,
    pub det_bound: usize,
    pub seed: u64,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self {
            order: None,
            path_cap: crate::algebra::DEFAULT_PATH_CAP,
            det_bound: crate::series::DEFAULT_DET_BOUND,
            seed: DEFAULT_SEED,
        }
    }
}

pub fn run_suite(suite: Suite, cfg: &VerifyConfig) -> Result<Vec<Check>> {
    let n = cfg.order.unwrap_or_else(|| suite.default_order());
    match suite {
        Suite::Affine => affine_suite(n, cfg),
        Suite::Dtable => dtable_suite(n, cfg),
        Suite::Molien => molien_suite(n),
        Suite::Oracle => oracle_suite(n, cfg),
        Suite::Monomial => monomial_suite(n, cfg),
        Suite::Partial => partial_suite(n, cfg),
        Suite::Super => super_suite(n),
        Suite::Riemsur => riemsur_suite(n, cfg),
    }
}

fn affine_suite(n: usize, cfg: &VerifyConfig) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for shape in affine_family() {
        let (q, _) = affine_shape(shape)?;
        for rep in affine_identity_all(&q, n, cfg.det_bound)? {
            let name = format!("~{shape}, {}", rep.subject.as_deref().unwrap_or(""));
            out.push(Check::from_report(Suite::Affine, name, &rep));
        }
    }
    Ok(out)
}

fn dtable_suite(n: usize, cfg: &VerifyConfig) -> Result<Vec<Check>> {
    affine_family()
        .into_iter()
        .map(|shape| {
            Ok(Check::from_report(Suite::Dtable, format!("~{shape}"), &dynkin_d_polynomial(shape, n, cfg.det_bound)?))
        })
        .collect()
}

fn molien_suite(n: usize) -> Result<Vec<Check>> {
    let mut kinds: Vec<GroupKind> = (2..=6).map(GroupKind::Cyclic).collect();
    kinds.extend([
        GroupKind::BinaryDihedral(2),
        GroupKind::BinaryDihedral(3),
        GroupKind::Tetrahedral,
        GroupKind::Octahedral,
        GroupKind::Icosahedral,
    ]);
    kinds
        .into_iter()
        .map(|k| {
            let g = FiniteSubgroupSL2::new(k)?;
            let rep = molien_check(&g, n)?;
            Ok(Check::from_report(Suite::Molien, rep.subject.clone().unwrap_or_default(), &rep))
        })
        .collect()
}

fn oracle_suite(n: usize, cfg: &VerifyConfig) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    let n_o = n.saturating_sub(1);
    for (name, q) in wild_quivers() {
        let datum = preprojective_datum(&q)?;
        let pres = datum.presentation().expect("attached relations");
        let brute = brute_algebra_matrix(pres, n, cfg.path_cap)?;
        out.push(Check::matrix(Suite::Oracle, format!("{name}: h(A)"), &datum.hilbert_a(n)?, &brute)?);

        let cyclic = brute_cyclic_dims(pres, n_o, cfg.path_cap)?;
        let oa = datum.hilbert_oa_bounded(n_o, cfg.det_bound)?;
        out.push(Check::series(Suite::Oracle, format!("{name}: h(O(A))"), &oa, &cyclic.sym_exp()?));

        let defect = anick_defect(&brute, &datum.h_v(n), &datum.h_l(n))?;
        let zero = MatSeries::zero(defect.dim(), n);
        out.push(Check::matrix(Suite::Oracle, format!("{name}: Anick defect"), &defect, &zero)?);
    }
    Ok(out)
}

fn geometric_inverse(p: &MonomialPresentation, n: usize) -> Result<TruncSeries> {
    let mut den = TruncSeries::one(n);
    for d in p.degrees() {
        den = den.sub(&TruncSeries::monomial(d, BigInt::from(1), n))?;
    }
    for w in p.relations() {
        den = den.add(&TruncSeries::monomial(p.word_weight(w), BigInt::from(1), n))?;
    }
    den.inv()
}

fn monomial_suite(n: usize, cfg: &VerifyConfig) -> Result<Vec<Check>> {
    let n_cyc = n.saturating_sub(2);
    let mut out = Vec::new();
    for (name, p) in monomial_catalog(5, cfg.seed) {
        out.push(Check::flag(Suite::Monomial, format!("{name}: strongly free"), p.strongly_free(), None));
        out.push(Check::series(
            Suite::Monomial,
            format!("{name}: normal words"),
            &p.count_normal_words(n),
            &geometric_inverse(&p, n)?,
        ));
        let cyclic = p.count_cyclic_avoiding(n_cyc, crate::monomial::DEFAULT_ENUMERATION_CAP)?;
        let zeta = p.to_datum().zeta_bounded(n_cyc, cfg.det_bound)?;
        out.push(Check::series(Suite::Monomial, format!("{name}: cyclic words"), &cyclic.sym_exp()?, &zeta));
    }
    let witness = admissible_search(&[1, 1], &[4, 5], 1_000_000)?;
    out.push(Check::flag(
        Suite::Monomial,
        "degrees (4, 5) admissible".into(),
        matches!(witness, Admissibility::Witness(_)),
        Some(format!("{witness:?}")),
    ));
    let none = admissible_search(&[1, 1], &[2, 3], 1_000_000)?;
    out.push(Check::flag(
        Suite::Monomial,
        "degrees (2, 3) inadmissible".into(),
        none == Admissibility::Inadmissible,
        None,
    ));
    Ok(out)
}

fn partial_suite(n: usize, cfg: &VerifyConfig) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for (name, q, j) in [("A2, J = {1}", shapes::dynkin_a(2), vec![1]), ("A3, J = {1}", shapes::dynkin_a(3), vec![1])] {
        let series = partial_preprojective(&q, &j, n, cfg.det_bound)?;
        let pres = partial_presentation(&q, &j)?;
        let brute = brute_algebra_matrix(&pres, n, cfg.path_cap)?;
        out.push(Check::matrix(Suite::Partial, format!("{name}: h"), &series.h, &brute)?);
        let cyclic = brute_cyclic_dims(&pres, n, cfg.path_cap)?;
        out.push(Check::series(Suite::Partial, format!("{name}: h_O"), &series.h_o, &cyclic.sym_exp()?));
        let l_circ = compute_l_circ(&pres, n);
        out.push(Check::series(Suite::Partial, format!("{name}: L° = 0"), &l_circ, &TruncSeries::zero(n)));
    }
    Ok(out)
}

/// One odd generator: cyclic words `x^k` survive only for odd `k`, each of odd parity.
fn super_cyclic_dims(n: usize) -> TruncSeries {
    TruncSeries::new((0..=n).map(|k| BigInt::from(if k % 2 == 1 { -1 } else { 0 })).collect())
}

fn super_suite(n: usize) -> Result<Vec<Check>> {
    let lhs = super_cyclic_dims(n).sym_exp()?;
    let mut odd = TruncSeries::one(n);
    for k in (1..=n).step_by(2) {
        odd = odd.mul(&TruncSeries::one_minus_power(k, n))?;
    }
    // zeta for h(V) = -t
    let cartan = MatSeries::from_fn(1, n, |_, _| TruncSeries::from_i64s(&[1, 1], n));
    let zeta = infinite_product_zeta(&cartan)?;
    let mut plus = TruncSeries::one(n);
    for k in 1..=n {
        plus = plus.mul(&TruncSeries::from_i64s(&[1], n).add(&TruncSeries::monomial(k, BigInt::from(1), n))?)?;
    }
    Ok(vec![
        Check::series(Suite::Super, "exterior algebra on odd cyclic words".into(), &lhs, &odd),
        Check::series(Suite::Super, "odd product against zeta".into(), &odd, &zeta),
        Check::series(
            Suite::Super,
            "product times (1+t)(1+t^2)... is 1".into(),
            &odd.mul(&plus)?,
            &TruncSeries::one(n),
        ),
    ])
}

fn riemsur_suite(n: usize, cfg: &VerifyConfig) -> Result<Vec<Check>> {
    let n_o = n.saturating_sub(2);
    let mut out = Vec::new();
    for (g, k) in [(2, 2), (2, 3), (3, 2)] {
        let (h, o) = a_g_n_circ_check(g, k, n, n_o, cfg.det_bound)?;
        out.push(Check::from_report(Suite::Riemsur, format!("A_{{{g},{k}}}: h(A)"), &h));
        out.push(Check::from_report(Suite::Riemsur, format!("A_{{{g},{k}}}: h(O(A))"), &o));
    }
    Ok(out)
}
