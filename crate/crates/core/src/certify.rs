//! Assertion suites grouped by scope. Each assertion carries a short anchor
//! tag, a one-line measured detail and its verdict.

use std::collections::BTreeSet;
use std::fmt::{self, Write as _};
use std::str::FromStr;

use serde::Serialize;

use crate::blackhole::{self, GammaDictionary};
use crate::error::Result;
use crate::fano::{self, FanoPlane, FlagTable, OperatorLabelling};
use crate::group::{self, Generators, REFERENCE_ORBITS};
use crate::hexagon::{self, HexagonModel};
use crate::mub;
use crate::par::Execution;
use crate::pauli::enumerate_universe;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Scope {
    All,
    Pauli,
    Fano,
    Group,
    Hexagon,
    Mub,
    Blackhole,
}

impl Scope {
    pub const SUITES: [Scope; 6] = [
        Scope::Pauli,
        Scope::Fano,
        Scope::Group,
        Scope::Hexagon,
        Scope::Mub,
        Scope::Blackhole,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Scope::All => "all",
            Scope::Pauli => "pauli",
            Scope::Fano => "fano",
            Scope::Group => "group",
            Scope::Hexagon => "hexagon",
            Scope::Mub => "mub",
            Scope::Blackhole => "blackhole",
        }
    }
}

impl fmt::Display for Scope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Scope {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        std::iter::once(Scope::All)
            .chain(Scope::SUITES)
            .find(|sc| sc.name() == s)
            .ok_or_else(|| format!("unknown scope {s:?}"))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Assertion {
    pub scope: Scope,
    pub anchor: &'static str,
    pub detail: String,
    pub passed: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CertifyConfig {
    pub seed: u64,
    pub trials: usize,
    pub budget: usize,
    pub exec: Execution,
}

impl Default for CertifyConfig {
    fn default() -> Self {
        Self {
            seed: blackhole::DEFAULT_SEED,
            trials: blackhole::DEFAULT_TRIALS,
            budget: group::DEFAULT_ELEMENT_BUDGET,
            exec: Execution::default(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CertifyReport {
    pub scope: Scope,
    pub seed: u64,
    pub trials: usize,
    pub assertions: Vec<Assertion>,
}

impl CertifyReport {
    pub fn passed(&self) -> bool {
        self.assertions.iter().all(|a| a.passed)
    }

    pub fn failures(&self) -> Vec<&Assertion> {
        self.assertions.iter().filter(|a| !a.passed).collect()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "schema": crate::SCHEMA,
            "command": "certify",
            "scope": self.scope,
            "seed": self.seed,
            "trials": self.trials,
            "passed": self.passed(),
            "assertions": self.assertions,
        })
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for a in &self.assertions {
            let verdict = if a.passed { "PASS" } else { "FAIL" };
            let _ = writeln!(out, "{verdict} [{}:{}] {}", a.scope, a.anchor, a.detail);
        }
        let n = self.assertions.len();
        let ok = n - self.failures().len();
        let _ = writeln!(out, "{ok}/{n} assertions passed");
        out
    }
}

struct Suite {
    scope: Scope,
    out: Vec<Assertion>,
}

impl Suite {
    fn new(scope: Scope) -> Self {
        Self {
            scope,
            out: Vec::new(),
        }
    }

    fn check(&mut self, anchor: &'static str, passed: bool, detail: String) {
        self.out.push(Assertion {
            scope: self.scope,
            anchor,
            detail,
            passed,
        });
    }
}

/// Data shared by the suites.
struct Context {
    model: HexagonModel,
    generators: Generators,
}

pub fn certify(scope: Scope, cfg: &CertifyConfig) -> Result<CertifyReport> {
    let ctx = Context {
        model: hexagon::build_hexagon()?,
        generators: group::build_generators(),
    };
    let scopes: Vec<Scope> = match scope {
        Scope::All => Scope::SUITES.to_vec(),
        s => vec![s],
    };
    let mut assertions = Vec::new();
    for s in scopes {
        let mut suite = Suite::new(s);
        match s {
            Scope::Pauli => pauli_suite(&mut suite),
            Scope::Fano => fano_suite(&mut suite),
            Scope::Group => group_suite(&mut suite, &ctx, cfg)?,
            Scope::Hexagon => hexagon_suite(&mut suite, &ctx, cfg)?,
            Scope::Mub => mub_suite(&mut suite, &ctx, cfg)?,
            Scope::Blackhole => blackhole_suite(&mut suite, &ctx, cfg)?,
            Scope::All => unreachable!(),
        }
        assertions.extend(suite.out);
    }
    Ok(CertifyReport {
        scope,
        seed: cfg.seed,
        trials: cfg.trials,
        assertions,
    })
}

fn pauli_suite(s: &mut Suite) {
    let u = enumerate_universe();
    let sym = u.iter().filter(|p| p.is_symmetric()).count();
    s.check(
        "census",
        u.len() == 63 && sym == 35,
        format!(
            "operators={}, symmetric={sym}, antisymmetric={}",
            u.len(),
            u.len() - sym
        ),
    );
    let closed = u.iter().all(|p| {
        u.iter()
            .all(|q| p.multiply(q).is_identity() || u.contains(&p.multiply(q).unsigned()))
    });
    s.check("products", closed, format!("closed_up_to_sign={closed}"));
}

fn fano_suite(s: &mut Suite) {
    let plane = FanoPlane::new();
    let dual = fano::dual_plane(&plane);
    s.check(
        "fano-axioms",
        plane.satisfies_axioms() && dual.satisfies_axioms(),
        format!("points=7, lines=7, dual_ok={}", dual.satisfies_axioms()),
    );
    let lab = OperatorLabelling::standard();
    s.check(
        "labelling",
        lab.is_valid(),
        format!("valid={}", lab.is_valid()),
    );
    let t = FlagTable::standard();
    let bad = fano::reference_mismatches(&t);
    s.check(
        "table1",
        bad.is_empty(),
        format!("cells=49, mismatches={}", bad.len()),
    );
    let rc = fano::check_row_column_structure(&t);
    s.check(
        "row-column-shifts",
        rc,
        format!("rows=(124)->(235)->.., columns=(134)->(245)->.., ok={rc}"),
    );
    match fano::orient_dual_fano(&fano::special_set(), &lab) {
        Ok(lines) => {
            let oct = fano::matches_octonion_signs(&lines);
            s.check(
                "orientation",
                oct,
                format!("oriented_lines={}, octonion_triples={oct}", lines.len()),
            );
        }
        Err(e) => s.check("orientation", false, e.to_string()),
    }
}

/// Flag/anti-flag point classes and H1/H2 line classes are each preserved.
fn preserves_partitions(m: &HexagonModel, action: &group::PauliAction) -> bool {
    let flags: BTreeSet<usize> = m.flag_points().into_iter().collect();
    let (Some(pp), Some(lp)) = (m.point_permutation(action), m.line_permutation(action)) else {
        return false;
    };
    (0..63).all(|p| flags.contains(&p) == flags.contains(&pp[p]))
        && (0..63).all(|l| m.lines()[l].is_h1() == m.lines()[lp[l]].is_h1())
}

fn group_suite(s: &mut Suite, ctx: &Context, cfg: &CertifyConfig) -> Result<()> {
    let g = &ctx.generators;
    let cnots = group::build_cnots();
    let word = group::alpha_cnot_word(&cnots);
    let block = group::alpha_block_form();
    let order = g.alpha.order();
    s.check(
        "alpha-word",
        word == block && block == g.alpha && order == Some(7),
        format!(
            "block_form_equals_cnot_word={}, order={order:?}",
            word == block
        ),
    );
    let d = group::orbits_under(&g.alpha)?;
    let tagged: BTreeSet<char> = d.orbits.iter().filter_map(|o| o.tag).collect();
    s.check(
        "alpha-orbits",
        d.orbits.len() == 9
            && tagged.len() == REFERENCE_ORBITS.len()
            && d.sizes().iter().all(|&n| n == 7),
        format!("orbits={}, matched={}", d.orbits.len(), tagged.len()),
    );
    let rels = group::relations(g);
    let failed: Vec<&str> = rels.iter().filter(|r| !r.1).map(|r| r.0).collect();
    s.check(
        "relations",
        failed.is_empty(),
        format!("relations={}, failed={failed:?}", rels.len()),
    );
    let grp = group::generate_group(
        &[g.alpha.clone(), g.beta.clone(), g.gamma.clone()],
        cfg.budget,
        cfg.exec,
    )?;
    s.check(
        "psl27-order",
        grp.order() == 168,
        format!("order={}", grp.order()),
    );
    let actions = grp.actions(cfg.exec)?;
    let kept = cfg
        .exec
        .map(&actions, |a| preserves_partitions(&ctx.model, a))
        .into_iter()
        .filter(|&b| b)
        .count();
    s.check(
        "partitions",
        kept == actions.len(),
        format!(
            "elements_preserving_flag_and_h1_classes={kept}/{}",
            actions.len()
        ),
    );
    let c = group::verify_clifford(&fano::special_set());
    s.check(
        "clifford",
        c.passed(),
        format!(
            "anticommutators={}, half_commutators={}, matched={}, so8_closed={}",
            c.anticommutators,
            c.half_commutators.len(),
            c.half_commutators_match,
            c.so8_closed
        ),
    );
    Ok(())
}

fn hexagon_suite(s: &mut Suite, ctx: &Context, cfg: &CertifyConfig) -> Result<()> {
    let m = &ctx.model;
    let h = hexagon::certify_generalized_hexagon(m);
    s.check(
        "generalized-hexagon",
        h.passed(),
        format!(
            "points={}, lines={}, order=({:?},{:?}), girth={}, diameter={}, H1={}, H2={}",
            h.points,
            h.lines,
            h.points_per_line,
            h.lines_per_point,
            h.girth.map_or("none".into(), |g| g.to_string()),
            h.diameter.map_or("none".into(), |g| g.to_string()),
            h.h1_lines,
            h.h2_lines
        ),
    );
    let lab = OperatorLabelling::standard();
    let margins = hexagon::check_margins(m, &lab);
    s.check(
        "table2-margins",
        margins,
        format!("margins_match={margins}"),
    );
    let fr = hexagon::flag_removal_components(m, cfg.budget)?;
    let (hw, cx) = (&fr.heawood, &fr.coxeter);
    s.check(
        "flag-removal",
        fr.one_flag_per_line
            && hw.isomorphic_to_reference
            && cx.isomorphic_to_reference
            && hw.graph.order() == 14
            && cx.graph.order() == 28,
        format!(
            "heawood=({},{}), coxeter=({},{}), isomorphic={}",
            hw.graph.order(),
            hw.graph.size(),
            cx.graph.order(),
            cx.graph.size(),
            hw.isomorphic_to_reference && cx.isomorphic_to_reference
        ),
    );
    let ov = hexagon::distance2_ovoid(m);
    s.check(
        "ovoid",
        ov.size == ov.expected_size && ov.covers_each_line_once,
        format!(
            "flag_points={}, each_line_once={}, all_ovoids={}",
            ov.size, ov.covers_each_line_once, ov.exact_cover_count
        ),
    );
    let same = hexagon::same_orbit_h2_lines(m).len();
    s.check(
        "same-orbit-h2",
        2 * same == h.h2_lines,
        format!("same_orbit={same}/{}", h.h2_lines),
    );
    let aut = hexagon::automorphism_group(m, cfg.budget)?;
    let gens_inside = ctx.generators.as_array().iter().all(|g| {
        group::PauliAction::from_gate(g)
            .ok()
            .and_then(|a| m.point_permutation(&a))
            .is_some_and(|p| aut.contains(&p))
    });
    s.check(
        "automorphisms",
        aut.order() == 12096 && gens_inside,
        format!(
            "aut_order={}, contains_generators={gens_inside}",
            aut.order()
        ),
    );
    let copies = hexagon::count_subgeometry_copies(m, &aut, cfg.exec);
    s.check(
        "copies",
        copies.heawood == 36 && copies.coxeter == 36,
        format!(
            "heawood_copies={}, coxeter_copies={}",
            copies.heawood, copies.coxeter
        ),
    );
    let k = hexagon::certify_klein_quadric(m);
    s.check(
        "klein-quadric",
        k.on_quadric == 35
            && k.quadric_is_symmetric_locus
            && k.collinear_lines == 63
            && k.distinct_points == 63,
        format!(
            "on_quadric={}, symmetric_locus={}, collinear_lines={}",
            k.on_quadric, k.quadric_is_symmetric_locus, k.collinear_lines
        ),
    );
    Ok(())
}

fn mub_suite(s: &mut Suite, ctx: &Context, cfg: &CertifyConfig) -> Result<()> {
    let sets = mub::build_commuting_sets(&ctx.model);
    let commuting = sets.iter().filter(|c| c.is_commuting()).count();
    let matches = mub::matches_reference(&sets);
    s.check(
        "commuting-sets",
        commuting == 9 && matches,
        format!(
            "sets={}, commuting={commuting}, reference_lists_match={matches}",
            sets.len()
        ),
    );
    let bases = mub::all_bases(&sets)?;
    let diag = sets.iter().zip(&bases).all(|(c, b)| b.diagonalizes(c));
    let r = mub::certify_unbiased(&bases, cfg.exec);
    s.check(
        "unbiased",
        r.passed() && diag,
        format!("bases={}, unbiased_pairs={}", r.bases, r.unbiased_pairs),
    );
    s.check(
        "orthogonal",
        r.orthogonal == r.bases && diag,
        format!("orthogonal={}/{}, eigenbases={diag}", r.orthogonal, r.bases),
    );
    Ok(())
}

fn blackhole_suite(s: &mut Suite, ctx: &Context, cfg: &CertifyConfig) -> Result<()> {
    let m = &ctx.model;
    let dict = blackhole::build_gamma_dictionary(m)?;
    let gc = dict.verify(m);
    s.check(
        "gamma-dictionary",
        gc.passed(),
        format!(
            "first_row={}, commutators={}, antisymmetric={}, covers_28={}",
            gc.first_row, gc.commutators, gc.antisymmetric, gc.covers_antisymmetric
        ),
    );

    let f = blackhole::fuzz_forms(cfg.seed, cfg.trials, &dict, cfg.exec);
    s.check(
        "cremmer-cartan",
        f.passed(),
        format!(
            "seed={}, agreements={}/{}, constant={}",
            f.seed,
            f.agreements,
            f.trials,
            f.measured_constant.as_deref().unwrap_or("varies")
        ),
    );

    invariance(s, ctx, cfg, &dict)?;

    let t = blackhole::fuzz_truncation(cfg.seed, cfg.trials, cfg.exec);
    s.check(
        "truncation",
        t == cfg.trials,
        format!("j4_equals_minus_D={t}/{}", cfg.trials),
    );
    let four =
        blackhole::charges_to_matrices(&named(&[("a1", 1), ("a2", 1), ("a4", 1), ("a7", -1)]));
    let e = blackhole::entropy(&four, &dict);
    let two_pi = 2.0 * std::f64::consts::PI;
    s.check(
        "four-charge",
        e.j4_cartan == "4" && e.forms_agree && (e.entropy - two_pi).abs() < 1e-12,
        format!("J4={}, S={}", e.j4_cartan, e.entropy_text),
    );
    let canon = blackhole::canonical_truncation(&four, &dict)?;
    let a: [i64; 8] = canon.amplitudes;
    s.check(
        "canonical-form",
        canon.block_form && canon.scaled_z == blackhole::predicted_scaled_z(&a),
        format!(
            "block_form={}, scaled_z={:?}",
            canon.block_form,
            canon.scaled_z.map(|z| (z.re, z.im))
        ),
    );

    hyperdeterminant(s, cfg);

    let fr = hexagon::flag_removal_components(m, cfg.budget)?;
    let q = hexagon::stu_quadruples(&fr.coxeter, m, &blackhole::stu_supports(&dict));
    let all4 = q.iter().all(|x| x.distances.iter().all(|&d| d == 4));
    s.check(
        "stu",
        q.len() == 7 && all4,
        format!("quadruples={}, pairwise_distance_4={all4}", q.len()),
    );
    Ok(())
}

fn named(pairs: &[(&str, i64)]) -> blackhole::Charges {
    let mut c = [0; 56];
    for (n, v) in pairs {
        c[blackhole::charge_index(n).expect("known name")] = *v;
    }
    c
}

fn invariance(
    s: &mut Suite,
    ctx: &Context,
    cfg: &CertifyConfig,
    dict: &GammaDictionary,
) -> Result<()> {
    let g = &ctx.generators;
    let grp = group::generate_group(
        &[g.alpha.clone(), g.beta.clone(), g.gamma.clone()],
        cfg.budget,
        cfg.exec,
    )?;
    let actions = grp
        .elements()
        .iter()
        .map(|e| blackhole::SlotAction::from_gate(e, dict))
        .collect::<Result<Vec<_>>>()?;
    let configs = blackhole::seeded_batch(cfg.seed, 20, false);
    let inv = blackhole::invariance_check(&actions, &configs, cfg.exec);
    s.check(
        "j4-invariance",
        inv,
        format!(
            "elements={}, configurations={}, invariant={inv}",
            actions.len(),
            configs.len()
        ),
    );
    let pf = blackhole::pfaffian_invariance(&g.as_array(), &configs, dict);
    s.check(
        "pfaffian-invariance",
        pf,
        format!("generators=3, invariant={pf}"),
    );
    Ok(())
}

fn hyperdeterminant(s: &mut Suite, cfg: &CertifyConfig) {
    let perms = [
        [1, 2, 3],
        [2, 3, 1],
        [3, 1, 2],
        [2, 1, 3],
        [1, 3, 2],
        [3, 2, 1],
    ];
    let batch = blackhole::seeded_batch(cfg.seed, cfg.trials.min(200), true);
    let sym = batch.iter().all(|c| {
        let ch = c.charges();
        let a: [i64; 8] = std::array::from_fn(|n| ch[n]);
        let d = blackhole::cayley_hyperdeterminant(&a);
        perms
            .iter()
            .all(|&p| blackhole::cayley_hyperdeterminant(&blackhole::permute_qubits(&a, p)) == d)
    });
    let product = blackhole::cayley_hyperdeterminant(&[1, 0, 0, 0, 0, 0, 0, 0]);
    s.check(
        "hyperdeterminant",
        sym && product == 0.into(),
        format!("s3_invariant={sym}, product_state_D={product}"),
    );
}
