//! Citation-keyed verification suites. Every suite re-runs the engine
//! computations behind one published statement and compares against the
//! expected outcome; failures carry a machine-readable expected/actual
//! diff. Resource-guard hits are reported separately from failures.

use crate::config::Config;
use num::{One, Zero};
use serde_json::{json, Map, Value};
use std::collections::BTreeMap;
use std::fmt::Display;
use torelli::character::{self, irrep_dimension_i64};
use torelli::dgn::{self, SectionLabel};
use torelli::freelie::{self, Labute, LieError};
use torelli::johnson::{self, Calibration, JohnsonError};
use torelli::lattice::CoefficientRing;
use torelli::obstruction::{self, GaloisProfile, H1Dim, ProfileDim};
use torelli::partition::Partition;
use torelli::scalar::{format_rat, rat, rint, Rat};
use torelli::sp_group::SeededRng;
use torelli::tensor::{lambda30_basis, sorted_words, TensorElement};
use torelli::word;
use torelli::SymplecticSpace;

#[derive(Clone, Copy, Debug, Default)]
pub struct SuiteParams {
    pub g: Option<usize>,
    pub n: Option<usize>,
}

#[derive(Debug)]
pub enum SuiteError {
    UnknownSuite(String),
    ResourceGuard(String),
    Internal(String),
}

impl Display for SuiteError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SuiteError::UnknownSuite(s) => write!(f, "unknown suite '{s}'"),
            SuiteError::ResourceGuard(s) => write!(f, "resource guard: {s}"),
            SuiteError::Internal(s) => write!(f, "{s}"),
        }
    }
}

fn map_lie(e: LieError) -> SuiteError {
    match e {
        LieError::ResourceGuard { .. } => SuiteError::ResourceGuard(e.to_string()),
        other => SuiteError::Internal(other.to_string()),
    }
}

fn map_johnson(e: JohnsonError) -> SuiteError {
    match e {
        JohnsonError::ResourceGuard(_) => SuiteError::ResourceGuard(e.to_string()),
        other => SuiteError::Internal(other.to_string()),
    }
}

#[derive(Clone, Debug)]
pub struct CheckResult {
    pub name: String,
    pub expected: String,
    pub actual: String,
    pub pass: bool,
    pub note: Option<String>,
}

#[derive(Debug)]
pub struct SuiteReport {
    pub id: String,
    pub citation: String,
    pub params: String,
    pub checks: Vec<CheckResult>,
    pub notes: Vec<String>,
}

impl SuiteReport {
    fn new(id: &str, citation: &str, params: String) -> Self {
        SuiteReport {
            id: id.into(),
            citation: citation.into(),
            params,
            checks: Vec::new(),
            notes: Vec::new(),
        }
    }

    fn check(&mut self, name: impl Into<String>, expected: impl Display, actual: impl Display) {
        let expected = expected.to_string();
        let actual = actual.to_string();
        self.checks.push(CheckResult {
            name: name.into(),
            pass: expected == actual,
            expected,
            actual,
            note: None,
        });
    }

    fn check_with_note(
        &mut self,
        name: impl Into<String>,
        expected: impl Display,
        actual: impl Display,
        note: impl Into<String>,
    ) {
        self.check(name, expected, actual);
        self.checks.last_mut().unwrap().note = Some(note.into());
    }

    pub fn pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn to_json(&self) -> Value {
        let checks: Vec<Value> = self
            .checks
            .iter()
            .map(|c| {
                let mut m = Map::new();
                m.insert("name".into(), json!(c.name));
                m.insert("expected".into(), json!(c.expected));
                m.insert("actual".into(), json!(c.actual));
                m.insert("pass".into(), json!(c.pass));
                if let Some(n) = &c.note {
                    m.insert("note".into(), json!(n));
                }
                Value::Object(m)
            })
            .collect();
        let mut fields = Map::new();
        fields.insert("id".into(), json!(self.id));
        fields.insert("citation".into(), json!(self.citation));
        fields.insert("params".into(), json!(self.params));
        fields.insert("checks".into(), Value::Array(checks));
        fields.insert("notes".into(), json!(self.notes));
        fields.insert("pass".into(), json!(self.pass()));
        crate::export::document("verify-report", fields)
    }

    pub fn human(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "suite {} ({}) params: {}\n",
            self.id, self.citation, self.params
        ));
        for c in &self.checks {
            out.push_str(&format!(
                "  [{}] {}: expected {}, got {}\n",
                if c.pass { "ok" } else { "FAIL" },
                c.name,
                c.expected,
                c.actual
            ));
            if let Some(n) = &c.note {
                out.push_str(&format!("        note: {n}\n"));
            }
        }
        for n in &self.notes {
            out.push_str(&format!("  note: {n}\n"));
        }
        out.push_str(&format!(
            "  result: {}\n",
            if self.pass() { "PASS" } else { "FAIL" }
        ));
        out
    }
}

pub fn suite_ids() -> &'static [&'static str] {
    &[
        "prop-9.5",
        "cor-9.3",
        "lemma-9.6",
        "prop-9.9",
        "prop-9.12",
        "prop-10.4",
        "lemma-18.2",
        "cor-12.6",
        "prop-17.1",
        "eq-3",
    ]
}

pub fn run_suite(id: &str, cfg: &Config, params: SuiteParams) -> Result<SuiteReport, SuiteError> {
    match id {
        "prop-9.5" => suite_prop_9_5(cfg, params),
        "cor-9.3" => suite_cor_9_3(cfg, params),
        "lemma-9.6" => suite_lemma_9_6(cfg, params),
        "prop-9.9" => suite_prop_9_9(cfg, params),
        "prop-9.12" => suite_prop_9_12(cfg, params),
        "prop-10.4" => suite_prop_10_4(cfg, params),
        "lemma-18.2" => suite_lemma_18_2(cfg, params),
        "cor-12.6" => suite_cor_12_6(cfg, params),
        "prop-17.1" => suite_prop_17_1(cfg, params),
        "eq-3" => suite_eq_3(cfg, params),
        other => Err(SuiteError::UnknownSuite(other.into())),
    }
}

fn genus_grid(params: SuiteParams, default: std::ops::RangeInclusive<usize>) -> Vec<usize> {
    match params.g {
        Some(g) => vec![g],
        None => default.collect(),
    }
}

fn point_grid(params: SuiteParams, default: std::ops::RangeInclusive<usize>) -> Vec<usize> {
    match params.n {
        Some(n) => vec![n],
        None => default.collect(),
    }
}

fn space(g: usize) -> Result<SymplecticSpace, SuiteError> {
    SymplecticSpace::new(g).map_err(|e| SuiteError::Internal(e.to_string()))
}

fn part(p: &[u32]) -> Partition {
    Partition::new(p.to_vec()).unwrap()
}

// ---------------------------------------------------------------------------

/// Multiplicity-free decomposition of the wedge square of the primitive
/// trivector module.
fn suite_prop_9_5(_cfg: &Config, params: SuiteParams) -> Result<SuiteReport, SuiteError> {
    let mut rep = SuiteReport::new(
        "prop-9.5",
        "Prop 9.5: decomposition of the wedge square of Lambda^3_0 H",
        format!("g in {:?}", genus_grid(params, 3..=6)),
    );
    for g in genus_grid(params, 3..=6) {
        let sp = space(g)?;
        let chi = character::char_lambda3_0(sp)
            .wedge_power(2)
            .map_err(|e| SuiteError::Internal(e.to_string()))?;
        let dec = chi
            .decompose()
            .map_err(|e| SuiteError::Internal(e.to_string()))?;
        let as_pairs: Vec<(Vec<u32>, i64)> =
            dec.iter().map(|(p, m)| (p.parts().to_vec(), *m)).collect();
        if g == 3 {
            rep.check(
                "g=3 wedge2(L30H) equals Q(1) + V_box",
                "[([2,2],1),([],1)]",
                format!("{as_pairs:?}").replace(' ', ""),
            );
        } else {
            let has = |p: &[u32]| as_pairs.iter().any(|(q, m)| q == p && *m == 1);
            rep.check(
                format!("g={g} wedge2(L30H) contains Q(1), L20H, V_box once each"),
                "true",
                has(&[]) && has(&[1, 1]) && has(&[2, 2]),
            );
            rep.check(
                format!("g={g} wedge2(L30H) is multiplicity-free"),
                "true",
                dec.iter().all(|(_, m)| *m == 1),
            );
        }
        let hx = character::char_h(sp)
            .tensor(&character::char_lambda3_0(sp))
            .and_then(|t| t.isotypic_multiplicity(&part(&[1, 1])))
            .map_err(|e| SuiteError::Internal(e.to_string()))?;
        rep.check(format!("g={g} unique L20H inside H (x) L30H"), 1, hx);
    }
    rep.notes.push(
        "stability of the decomposition beyond g = 6 is a cited result, verified here at g = 6 only"
            .into(),
    );
    Ok(rep)
}

/// Invariant multiplicities of the graded quotient pieces: zero through
/// degree 5 and one in degree 6, by the explicit quotient at small genus
/// and by the character recursion everywhere.
fn suite_cor_9_3(_cfg: &Config, params: SuiteParams) -> Result<SuiteReport, SuiteError> {
    let mut rep = SuiteReport::new(
        "cor-9.3",
        "Cor 9.3 and the degree-6 invariant: (Gr_{-r} p)^Sp = 0 for r < 6, dim 1 at r = 6",
        format!("g in {:?}", genus_grid(params, 2..=6)),
    );
    for g in genus_grid(params, 2..=6) {
        let sp = space(g)?;
        let explicit = g <= 3;
        let mut lab = Labute::new(sp);
        for r in 1..=6usize {
            let chi = if explicit {
                freelie::graded_p_character(sp, r, Some(&mut lab)).map_err(map_lie)?
            } else {
                freelie::graded_p_character(sp, r, None).map_err(map_lie)?
            };
            let inv = chi
                .invariant_multiplicity()
                .map_err(|e| SuiteError::Internal(e.to_string()))?;
            rep.check(
                format!(
                    "g={g} r={r} invariant multiplicity ({})",
                    if explicit {
                        "quotient + recursion"
                    } else {
                        "recursion"
                    }
                ),
                i64::from(r == 6),
                inv,
            );
        }
    }
    rep.notes
        .push("at g = 2 and 3 the explicit Lyndon quotient and the recursion are compared degree by degree".into());
    Ok(rep)
}

/// The Johnson derivation annihilates the relation, the inner-derivation
/// identity, and the weight -2 image rank.
fn suite_lemma_9_6(cfg: &Config, params: SuiteParams) -> Result<SuiteReport, SuiteError> {
    let mut rep = SuiteReport::new(
        "lemma-9.6",
        "Lemma 9.6: the trivector derivation annihilates omega; delta(x ^ theta) = ad_x - theta(x,.)omega; weight -2 image",
        format!("g in {:?}", genus_grid(params, 2..=4)),
    );
    let mut rng = SeededRng::new(cfg.seed);
    for g in genus_grid(params, 2..=4) {
        let sp = space(g)?;
        let m = sp.rank();
        let omega = freelie::omega(sp);
        let words = sorted_words(m, 3);
        let mut annihilates = true;
        for w in &words {
            let d = johnson::delta_tilde(&TensorElement::basis_wedge(sp, &word::unpack(*w, 3), 0))
                .map_err(map_johnson)?;
            if !d.apply(&omega).is_zero() {
                annihilates = false;
            }
        }
        rep.check(
            format!("g={g} delta annihilates omega on the full basis"),
            "true",
            annihilates,
        );
        // plus 30 random combinations
        let mut random_ok = true;
        for _ in 0..30 {
            let mut t = TensorElement::zero(sp, 3, 0, torelli::tensor::Symmetry::Alternating);
            for _ in 0..5 {
                t.add_term(words[rng.below(words.len())], rint(rng.int_in(-4, 4)));
            }
            let d = johnson::delta_tilde(&t).map_err(map_johnson)?;
            if !d.apply(&omega).is_zero() {
                random_ok = false;
            }
        }
        rep.check(
            format!("g={g} delta annihilates omega on 30 random trivectors"),
            "true",
            random_ok,
        );
        let mut identity_ok = true;
        for x in 0..m as u8 {
            let t = TensorElement::basis_wedge(sp, &[x], 1)
                .theta_wedge()
                .map_err(|e| SuiteError::Internal(e.to_string()))?;
            let d = johnson::delta_tilde(&t).map_err(map_johnson)?;
            let xe = torelli::LieElement::generator(m, x).unwrap();
            for u in 0..m as u8 {
                let ue = torelli::LieElement::generator(m, u).unwrap();
                let expect = xe.bracket(&ue).sub(&omega.scale(&rint(sp.theta(x, u))));
                if *d.value(u) != expect {
                    identity_ok = false;
                }
            }
        }
        rep.check(
            format!("g={g} delta(x ^ theta_check) = ad_x - theta(x, .) omega as derivations"),
            "true",
            identity_ok,
        );
        let img = johnson::weight2_image(sp).map_err(map_johnson)?;
        let dim_v = irrep_dimension_i64(&part(&[2, 2]), g).unwrap();
        let dim_l20 = (2 * g * g - g - 1) as i64;
        let expected_rank = dim_v + dim_l20 + 1;
        if g == 2 {
            rep.check_with_note(
                "g=2 weight -2 image rank = dim V_box + dim L20H + 1",
                expected_rank,
                img.rank,
                "unattainable: the wedge square of the 4-dimensional trivector module caps the rank at 6; \
                 at genus 2 the image collapses onto the inner part (rank = dim L20H + 1) and contains no V_box",
            );
            rep.check("g=2 collapsed rank = dim L20H + 1", dim_l20 + 1, img.rank);
        } else {
            rep.check(
                format!("g={g} weight -2 image rank = dim V_box + dim L20H + 1"),
                expected_rank,
                img.rank,
            );
        }
        rep.check(
            format!("g={g} image meets the trivial-twist line"),
            "true",
            img.contains_trace_line,
        );
    }
    rep.notes.push(
        "sign convention: theta(a_i, b_j) = +delta_ij; delta(a1^a2^a3)(b1) = -[a2,a3]".into(),
    );
    Ok(rep)
}

/// Isotypic images of the three bracket components in the quotient
/// derivation algebra.
fn suite_prop_9_9(_cfg: &Config, params: SuiteParams) -> Result<SuiteReport, SuiteError> {
    let mut rep = SuiteReport::new(
        "prop-9.9",
        "Prop 9.9 / Thm 9.7: component images of the degree -2 bracket in the quotient derivations",
        format!("g in {:?}", genus_grid(params, 3..=4)),
    );
    for g in genus_grid(params, 3..=4) {
        let sp = space(g)?;
        let imgs = johnson::bracket_component_images(sp).map_err(map_johnson)?;
        let show = |v: &[(Partition, i64)]| {
            let mut s: Vec<String> = v.iter().map(|(p, m)| format!("{p}x{m}")).collect();
            s.sort();
            s.join(",")
        };
        rep.check(
            format!("g={g} image of Lambda^2 H is L20H"),
            "[1,1]x1",
            show(&imgs.from_lambda2_h),
        );
        rep.check(
            format!("g={g} image of H (x) L30H is L20H"),
            "[1,1]x1",
            show(&imgs.from_h_lambda30),
        );
        let expect = if g == 3 { "[2,2]x1" } else { "[1,1]x1,[2,2]x1" };
        rep.check(
            format!("g={g} image of Lambda^2 L30H"),
            expect,
            show(&imgs.from_lambda2_lambda30),
        );
        let dim_v = irrep_dimension_i64(&part(&[2, 2]), g).unwrap();
        let dim_l20 = (2 * g * g - g - 1) as i64;
        rep.check(
            format!("g={g} total degree -2 rank = dim V_box + dim L20H"),
            dim_v + dim_l20,
            imgs.total_rank,
        );
        let (free_rank, quot_rank) = johnson::degree1_ranks(sp).map_err(map_johnson)?;
        let c2g3 = (2 * g) * (2 * g - 1) * (2 * g - 2) / 6;
        rep.check(
            format!("g={g} degree -1 injectivity (free)"),
            c2g3,
            free_rank,
        );
        rep.check(
            format!("g={g} degree -1 injectivity (quotient)"),
            c2g3,
            quot_rank,
        );
    }
    Ok(rep)
}

/// Hom-space dimensions of the projection bases and exact calibration.
fn suite_prop_9_12(_cfg: &Config, params: SuiteParams) -> Result<SuiteReport, SuiteError> {
    let mut rep = SuiteReport::new(
        "prop-9.12",
        "Props 9.12/9.13: projection bases of the Hom spaces and the bracket calibration",
        format!(
            "g in {:?}, n in {:?}",
            genus_grid(params, 3..=6),
            point_grid(params, 0..=3)
        ),
    );
    for g in genus_grid(params, 3..=6) {
        let sp = space(g)?;
        let l30 = character::char_lambda3_0(sp);
        let h = character::char_h(sp);
        for n in point_grid(params, 0..=3) {
            // char of the degree -1 part: L30H + n copies of H
            let mut gr1 = l30.clone();
            for _ in 0..n {
                gr1 = gr1
                    .checked_add(&h)
                    .map_err(|e| SuiteError::Internal(e.to_string()))?;
            }
            let w2 = gr1
                .wedge_power(2)
                .map_err(|e| SuiteError::Internal(e.to_string()))?;
            let m11 = w2
                .isotypic_multiplicity(&part(&[1, 1]))
                .map_err(|e| SuiteError::Internal(e.to_string()))?;
            let m0 = w2
                .invariant_multiplicity()
                .map_err(|e| SuiteError::Internal(e.to_string()))?;
            let choose2 = (n * n.saturating_sub(1) / 2) as i64;
            let expect11 = 2 * n as i64 + choose2 + i64::from(g >= 4);
            rep.check(
                format!("g={g} n={n} dim Hom(Lambda^2 Gr_-1, L20H)"),
                expect11,
                m11,
            );
            rep.check(
                format!("g={g} n={n} dim Hom(Lambda^2 Gr_-1, trivial)"),
                n as i64 + 1 + choose2,
                m0,
            );
        }
        let cal = Calibration::get(sp).map_err(map_johnson)?;
        let words = sorted_words(sp.rank(), 3).len();
        rep.check(
            format!("g={g} calibration verified on all basis pairs"),
            words * (words - 1) / 2,
            cal.pairs_verified,
        );
        rep.check(
            format!("g={g} c-projection present iff g >= 4"),
            usize::from(g >= 4),
            cal.c_hom_dim,
        );
        rep.notes.push(format!(
            "g={g} scalars: lambda_c = {}, lambda_d = {}, e normalized to the quotient splitting, psi scalar 1 (its relative normalization never enters)",
            format_rat(&cal.lambda_c),
            format_rat(&cal.lambda_d)
        ));
    }
    Ok(rep)
}

/// Sections of the point-forgetting map and the integral test.
fn suite_prop_10_4(_cfg: &Config, params: SuiteParams) -> Result<SuiteReport, SuiteError> {
    let mut rep = SuiteReport::new(
        "prop-10.4",
        "Prop 10.4 / Lemma 10.5 / Lemma 10.7 / Prop 10.8: invariant sections and integrality",
        format!(
            "g in {:?}, n in {:?}",
            genus_grid(params, 3..=6),
            point_grid(params, 0..=3)
        ),
    );
    for g in genus_grid(params, 3..=6) {
        let sp = space(g)?;
        for n in point_grid(params, 0..=3) {
            let sections =
                dgn::solve_sections(sp, n).map_err(|e| SuiteError::Internal(e.to_string()))?;
            let expect = if g == 3 { n + 1 } else { n };
            rep.check(format!("g={g} n={n} section count"), expect, sections.len());
            let tautological = sections
                .iter()
                .filter(|s| matches!(s.label, SectionLabel::Tautological(_)))
                .count();
            rep.check(format!("g={g} n={n} tautological count"), n, tautological);
            if g == 3 {
                let zeta = sections
                    .iter()
                    .find(|s| matches!(s.label, SectionLabel::Zeta));
                rep.check(format!("g=3 n={n} zeta present"), "true", zeta.is_some());
                if let Some(z) = zeta {
                    let ok = dgn::integral_section_check(sp, n, z, CoefficientRing::local_at(&[2]))
                        .map_err(|e| SuiteError::Internal(e.to_string()))?;
                    rep.check(
                        format!("g=3 n={n} zeta fails the integral test at Z_(2)"),
                        "false",
                        ok,
                    );
                }
                for s in sections
                    .iter()
                    .filter(|s| matches!(s.label, SectionLabel::Tautological(_)))
                {
                    let ok = dgn::integral_section_check(sp, n, s, CoefficientRing::local_at(&[2]))
                        .map_err(|e| SuiteError::Internal(e.to_string()))?;
                    rep.check(
                        format!("g=3 n={n} tautological section is integral at Z_(2)"),
                        "true",
                        ok,
                    );
                }
            }
        }
    }
    Ok(rep)
}

/// The connecting map against the literal cocycle, and its zero fiber.
fn suite_lemma_18_2(cfg: &Config, params: SuiteParams) -> Result<SuiteReport, SuiteError> {
    let mut rep = SuiteReport::new(
        "lemma-18.2",
        "Lemma 18.2 / Cor 18.3: the connecting map equals the obstruction cocycle; its zero fiber is the tautological set",
        format!(
            "g in {:?}, n in {:?}",
            genus_grid(params, 5..=6),
            point_grid(params, 0..=3)
        ),
    );
    let genera = genus_grid(params, 5..=6);
    let points = point_grid(params, 0..=3);
    let mut classes: BTreeMap<(usize, usize), torelli::ObstructionClass> = BTreeMap::new();
    for &g in &genera {
        let sp = space(g)?;
        for &n in &points {
            let (cls, _) = obstruction::obstruction_cocycle(sp, n)
                .map_err(|e| SuiteError::Internal(e.to_string()))?;
            let expect = obstruction::delta_map_symbolic(n);
            rep.check(
                format!("g={g} n={n} cocycle equals the closed form as polynomials"),
                "true",
                cls == expect,
            );
            classes.insert((g, n), cls);
        }
    }
    // 50 seeded random rational points across the grid
    let mut rng = SeededRng::new(cfg.seed ^ 0x18_2);
    let mut agree = 0usize;
    for _ in 0..50 {
        let g = genera[rng.below(genera.len())];
        let n = points[rng.below(points.len())];
        let a: Vec<Rat> = (0..n)
            .map(|_| rat(rng.int_in(-6, 6), rng.int_in(1, 6)))
            .collect();
        let Some(cls) = classes.get(&(g, n)) else {
            continue;
        };
        let via_cocycle = cls.eval(&a);
        let (via_delta, _) =
            obstruction::delta_map(g, n, &a).map_err(|e| SuiteError::Internal(e.to_string()))?;
        if via_cocycle == via_delta {
            agree += 1;
        }
    }
    rep.check(
        "50 random rational points agree across both routes",
        50,
        agree,
    );
    for &n in &points {
        let (fiber, _) =
            obstruction::delta_zero_fiber(5, n).map_err(|e| SuiteError::Internal(e.to_string()))?;
        rep.check(format!("n={n} zero fiber size"), n, fiber.len());
        let standard = fiber.iter().all(|a| {
            a.iter().filter(|x| x.is_one()).count() == 1
                && a.iter().filter(|x| x.is_zero()).count() == a.len().saturating_sub(1)
        });
        rep.check(
            format!("n={n} zero fiber empty iff n = 0"),
            n == 0,
            fiber.is_empty(),
        );
        if n > 0 {
            rep.check(
                format!("n={n} fiber points are tautological"),
                "true",
                standard,
            );
        }
    }
    rep.notes.push(
        "imported assumptions, flagged not tested: injectivity into the full completion and cup-product injectivity of the odd steps"
            .into(),
    );
    Ok(rep)
}

/// The point-class identities.
fn suite_cor_12_6(_cfg: &Config, params: SuiteParams) -> Result<SuiteReport, SuiteError> {
    let mut rep = SuiteReport::new(
        "cor-12.6",
        "Prop 12.5 / Cor 12.6: h o (theta_check ^ .) = (g-1) id and the kappa normalizations",
        format!("g in {:?}", genus_grid(params, 2..=6)),
    );
    for g in genus_grid(params, 2..=6) {
        let sp = space(g)?;
        let mut ok = true;
        for l in sp.letters() {
            let x = TensorElement::basis_wedge(sp, &[l], 0);
            let h = x
                .theta_wedge()
                .and_then(|t| t.c_contract())
                .map_err(|e| SuiteError::Internal(e.to_string()))?;
            if h != x.scale(&rint(g as i64 - 1)) {
                ok = false;
            }
        }
        rep.check(
            format!("g={g} h(theta_check ^ x) = (g-1) x on a basis"),
            "true",
            ok,
        );
        if g >= 3 {
            let k = obstruction::kappa_correspondence(sp, 1, 1)
                .map_err(|e| SuiteError::Internal(e.to_string()))?;
            rep.check(
                format!("g={g} composite check inside the projection"),
                "true",
                k.composite_is_g_minus_one,
            );
            // h_1 kills split lifts and is (g-1) on the slot classes
            let lift_killed = lambda30_basis(sp)
                .iter()
                .all(|v| v.c_contract().map(|c| c.is_zero()).unwrap_or(false));
            rep.check(
                format!("g={g} h vanishes on the c-free lifts"),
                "true",
                lift_killed,
            );
            rep.notes.push(format!(
                "g={g}: {}; {}",
                k.class_of_2h, k.class_of_projection
            ));
        }
    }
    // consistency with the section normalization: the zero fiber consists of
    // the points kappa_j/(2g-2), i.e. a = standard basis vectors
    let (fiber, _) =
        obstruction::delta_zero_fiber(5, 2).map_err(|e| SuiteError::Internal(e.to_string()))?;
    rep.check(
        "fiber points sit at kappa_j/(2g-2) in the a-parametrization",
        2,
        fiber.len(),
    );
    Ok(rep)
}

/// The first-cohomology table.
fn suite_prop_17_1(_cfg: &Config, params: SuiteParams) -> Result<SuiteReport, SuiteError> {
    let g = params.g.unwrap_or(5);
    let mut rep = SuiteReport::new(
        "prop-17.1",
        "Prop 17.1: the H^1 table and the H^2 presentation",
        format!("g={g}, n in {:?}", point_grid(params, 0..=3)),
    );
    let sp = space(g)?;
    let opaque = GaloisProfile::opaque();
    let rich = {
        let mut h1 = BTreeMap::new();
        h1.insert(
            1,
            ProfileDim::Symbolic(torelli::obstruction::SymbolicDim::Infinite),
        );
        h1.insert(2, ProfileDim::Dim(0));
        h1.insert(3, ProfileDim::Dim(1));
        h1.insert(4, ProfileDim::Dim(2));
        GaloisProfile {
            chi_infinite: true,
            h1,
        }
    };
    for n in point_grid(params, 0..=3) {
        for (pname, profile) in [("opaque", &opaque), ("example", &rich)] {
            let rows: Vec<String> = (1..=5)
                .map(|r| {
                    let (d, _) = obstruction::h1_profile(sp, n, r, profile).unwrap();
                    match d {
                        H1Dim::Exact(k) => k.to_string(),
                        H1Dim::Finite => "finite".into(),
                        H1Dim::Infinite => "infinite".into(),
                    }
                })
                .collect();
            rep.check(
                format!("n={n} profile={pname} H^1 rows r=1..5"),
                format!("[{}, 0, 0, 0, 0]", n),
                format!("[{}]", rows.join(", ")),
            );
        }
        let (d6, _) = obstruction::h1_profile(sp, n, 6, &rich)
            .map_err(|e| SuiteError::Internal(e.to_string()))?;
        rep.check(
            format!("n={n} r=6 equals profile(3) x invariant multiplicity"),
            "Exact(1)",
            format!("{d6:?}"),
        );
        let pres = torelli::H2Presentation::new(g, n);
        rep.check(
            format!("n={n} H^2 dimension 1 + n + C(n,2)"),
            1 + n + n * n.saturating_sub(1) / 2,
            pres.dimension(),
        );
        if n > 0 {
            let mut rows = pres.relation_vectors();
            let rank = torelli::matrix::QMat::from_rows(rows.clone()).rank();
            rep.check(format!("n={n} relations are independent"), n, rank);
            // and independent of the reduced-basis span: stacking the
            // reduced basis unit vectors (c, e_i, e_ij coordinates) must
            // reach the full generator space
            let total = 1 + 2 * n + n * n.saturating_sub(1) / 2;
            let mut unit = |idx: usize| {
                let mut v = vec![torelli::scalar::rint(0); total];
                v[idx] = torelli::scalar::rint(1);
                v
            };
            rows.push(unit(0)); // c
            for j in 0..n {
                rows.push(unit(1 + n + j)); // e_j
            }
            for k in 0..n * n.saturating_sub(1) / 2 {
                rows.push(unit(1 + 2 * n + k)); // e_ij
            }
            let full = torelli::matrix::QMat::from_rows(rows).rank();
            rep.check(
                format!("n={n} relations are transverse to the reduced basis"),
                total,
                full,
            );
        }
    }
    Ok(rep)
}

/// The branched-cover genus and codimension formulas.
fn suite_eq_3(_cfg: &Config, _params: SuiteParams) -> Result<SuiteReport, SuiteError> {
    let mut rep = SuiteReport::new(
        "eq-3",
        "Eq (3) and the codimension display: branched quotient genus and locus codimension",
        "fixed examples".into(),
    );
    let r = crate::rh::branched_cover_genus(2, 2, 6)
        .map_err(|e| SuiteError::Internal(e.to_string()))?;
    rep.check("(g,p,a) = (2,2,6) quotient genus", 0, r.quotient_genus);
    rep.check("(g,p,a) = (2,2,6) codimension", "0", format_rat(&r.codim));
    for g in [4u32, 7] {
        let r = crate::rh::branched_cover_genus(g, 3, 0)
            .map_err(|e| SuiteError::Internal(e.to_string()))?;
        rep.check(
            format!("unramified p=3 cover of genus {g}: codim = 2g - 2"),
            format!("{}", 2 * g - 2),
            format_rat(&r.codim),
        );
    }
    let r = crate::rh::branched_cover_genus(3, 2, 8)
        .map_err(|e| SuiteError::Internal(e.to_string()))?;
    rep.check("(g,p,a) = (3,2,8) quotient genus", 0, r.quotient_genus);
    rep.check("(g,p,a) = (3,2,8) codimension", "1", format_rat(&r.codim));
    let rejected = crate::rh::branched_cover_genus(3, 3, 0);
    rep.check(
        "(g,p,a) = (3,3,0) rejected (non-integral quotient genus)",
        "true",
        rejected.is_err(),
    );
    Ok(rep)
}
