//! One line per acceptance criterion; exits nonzero if any fails.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use hexapauli::blackhole::{self, ChargeConfiguration, SlotAction};
use hexapauli::fano::{self, FlagTable};
use hexapauli::group::{self, DEFAULT_ELEMENT_BUDGET};
use hexapauli::hexagon::{self, HexLabel};
use hexapauli::{enumerate_universe, mub, Execution, Result};

const SEED: u64 = blackhole::DEFAULT_SEED;
const TRIALS: usize = blackhole::DEFAULT_TRIALS;

type Check = fn() -> Result<(bool, String)>;

fn census() -> Result<(bool, String)> {
    let u = enumerate_universe();
    let sym = u.iter().filter(|p| p.is_symmetric()).count();
    Ok((
        u.len() == 63 && sym == 35,
        format!(
            "{} operators, {sym} symmetric, {} antisymmetric",
            u.len(),
            u.len() - sym
        ),
    ))
}

fn table1() -> Result<(bool, String)> {
    let bad = fano::reference_mismatches(&FlagTable::standard());
    Ok((
        bad.is_empty(),
        format!("49 cells, {} mismatches", bad.len()),
    ))
}

fn rows_columns() -> Result<(bool, String)> {
    let t = FlagTable::standard();
    let counts = (0..7).all(|k| t.row_pattern(k).len() == 3 && t.column_pattern(k).len() == 3);
    let ok = counts && fano::check_row_column_structure(&t);
    Ok((
        ok,
        "3 symmetric + 4 antisymmetric per row and column, cyclic shifts".into(),
    ))
}

fn alpha() -> Result<(bool, String)> {
    let g = group::build_generators();
    let word = group::alpha_cnot_word(&group::build_cnots());
    let d = group::orbits_under(&g.alpha)?;
    let tagged: BTreeSet<char> = d.orbits.iter().filter_map(|o| o.tag).collect();
    let ok = word == group::alpha_block_form()
        && g.alpha.order() == Some(7)
        && d.orbits.len() == 9
        && tagged.len() == 9;
    Ok((
        ok,
        format!(
            "order {}, {} orbits, {} matched",
            g.alpha.order().unwrap_or(0),
            d.orbits.len(),
            tagged.len()
        ),
    ))
}

fn psl27() -> Result<(bool, String)> {
    let g = group::build_generators();
    let rels = group::relations(&g).iter().all(|r| r.1);
    let grp = group::generate_group(
        &[g.alpha, g.beta, g.gamma],
        DEFAULT_ELEMENT_BUDGET,
        Execution::default(),
    )?;
    let m = hexagon::build_hexagon()?;
    let flags: BTreeSet<usize> = m.flag_points().into_iter().collect();
    let kept = grp.actions(Execution::default())?.iter().all(|a| {
        let (Some(pp), Some(lp)) = (m.point_permutation(a), m.line_permutation(a)) else {
            return false;
        };
        (0..63).all(|p| flags.contains(&p) == flags.contains(&pp[p]))
            && (0..63).all(|l| m.lines()[l].is_h1() == m.lines()[lp[l]].is_h1())
    });
    Ok((
        rels && grp.order() == 168 && kept,
        format!(
            "relations {rels}, order {}, partitions kept {kept}",
            grp.order()
        ),
    ))
}

fn clifford() -> Result<(bool, String)> {
    let c = group::verify_clifford(&fano::special_set());
    Ok((
        c.passed() && c.half_commutators.len() == 21,
        format!("{} half-commutators", c.half_commutators.len()),
    ))
}

fn hexagon_axioms() -> Result<(bool, String)> {
    let m = hexagon::build_hexagon()?;
    let closed = m.lines().iter().all(|l| {
        let [p, q, r] = m.line_operators(l);
        p.commutes(&q) && q.commutes(&r) && p.multiply(&q).same_up_to_sign(&r)
    });
    let h = hexagon::certify_generalized_hexagon(&m);
    Ok((
        h.passed() && closed,
        format!(
            "{}/{} points/lines, girth {}, diameter {}",
            h.points,
            h.lines,
            h.girth.unwrap_or(0),
            h.diameter.unwrap_or(0)
        ),
    ))
}

fn substructures() -> Result<(bool, String)> {
    let m = hexagon::build_hexagon()?;
    let fr = hexagon::flag_removal_components(&m, DEFAULT_ELEMENT_BUDGET)?;
    let h = hexagon::certify_generalized_hexagon(&m);
    let ov = hexagon::distance2_ovoid(&m);
    let same = hexagon::same_orbit_h2_lines(&m).len();
    let ok = fr.heawood.isomorphic_to_reference
        && fr.coxeter.isomorphic_to_reference
        && fr.heawood.points.len() == 14
        && fr.coxeter.points.len() == 28
        && h.h1_lines == 21
        && h.h2_lines == 42
        && ov.size == 21
        && ov.covers_each_line_once
        && same == 21;
    Ok((
        ok,
        format!(
            "components 14/28, H1 {} H2 {}, ovoid {}, same-orbit H2 {same}",
            h.h1_lines, h.h2_lines, ov.size
        ),
    ))
}

fn automorphisms() -> Result<(bool, String)> {
    let m = hexagon::build_hexagon()?;
    let aut = hexagon::automorphism_group(&m, DEFAULT_ELEMENT_BUDGET)?;
    let c = hexagon::count_subgeometry_copies(&m, &aut, Execution::default());
    Ok((
        aut.order() == 12096 && c.heawood == 36 && c.coxeter == 36,
        format!("order {}, copies {}/{}", aut.order(), c.heawood, c.coxeter),
    ))
}

fn klein() -> Result<(bool, String)> {
    let k = hexagon::certify_klein_quadric(&hexagon::build_hexagon()?);
    Ok((
        k.on_quadric == 35 && k.quadric_is_symmetric_locus && k.collinear_lines == 63,
        format!(
            "{} on quadric, {} collinear lines",
            k.on_quadric, k.collinear_lines
        ),
    ))
}

fn mubs() -> Result<(bool, String)> {
    let sets = mub::build_commuting_sets(&hexagon::build_hexagon()?);
    let bases = mub::all_bases(&sets)?;
    let r = mub::certify_unbiased(&bases, Execution::default());
    Ok((
        r.passed(),
        format!(
            "{} bases, {} orthogonal, {} unbiased pairs",
            r.bases, r.orthogonal, r.unbiased_pairs
        ),
    ))
}

fn dictionary() -> Result<blackhole::GammaDictionary> {
    blackhole::build_gamma_dictionary(&hexagon::build_hexagon()?)
}

fn cross_form() -> Result<(bool, String)> {
    let f = blackhole::fuzz_forms(SEED, TRIALS, &dictionary()?, Execution::default());
    Ok((
        f.passed(),
        format!(
            "{}/{} equal, constant {}",
            f.agreements,
            f.trials,
            f.measured_constant.unwrap_or_default()
        ),
    ))
}

fn invariance() -> Result<(bool, String)> {
    let d = dictionary()?;
    let g = group::build_generators();
    let grp = group::generate_group(
        &[g.alpha.clone(), g.beta.clone(), g.gamma.clone()],
        DEFAULT_ELEMENT_BUDGET,
        Execution::default(),
    )?;
    let actions = grp
        .elements()
        .iter()
        .map(|e| SlotAction::from_gate(e, &d))
        .collect::<Result<Vec<_>>>()?;
    let configs = blackhole::seeded_batch(SEED, 20, false);
    let j4 = blackhole::invariance_check(&actions, &configs, Execution::default());
    let pf = blackhole::pfaffian_invariance(&g.as_array(), &configs, &d);
    Ok((
        j4 && pf,
        format!("168 elements x 20 configurations {j4}, Pfaffian {pf}"),
    ))
}

fn truncation() -> Result<(bool, String)> {
    let d = dictionary()?;
    let n = blackhole::fuzz_truncation(SEED, TRIALS, Execution::default());
    let mut c = [0; 56];
    let mut ok = true;
    for (a1, a2, a4, a7) in [(1, 1, 1, -1), (2, -3, 1, 1), (1, 2, 3, 4)] {
        c[1] = a1;
        c[2] = a2;
        c[4] = a4;
        c[7] = a7;
        let e = blackhole::entropy(&blackhole::charges_to_matrices(&c), &d);
        let expected = std::f64::consts::PI * ((4 * a1 * a2 * a4 * a7) as f64).abs().sqrt();
        ok &= (e.entropy - expected).abs() < 1e-12;
    }
    c = [0; 56];
    (c[1], c[2], c[4], c[7]) = (1, 1, 1, -1);
    let s = blackhole::entropy(&blackhole::charges_to_matrices(&c), &d).entropy;
    ok &= (s - 2.0 * std::f64::consts::PI).abs() < 1e-12;
    Ok((
        ok && n == TRIALS,
        format!("J4 = -D(a) on {n}/{TRIALS}, S(1,1,1,-1) = {s:.12}"),
    ))
}

fn hyperdeterminant() -> Result<(bool, String)> {
    let perms = [
        [1, 2, 3],
        [2, 3, 1],
        [3, 1, 2],
        [2, 1, 3],
        [1, 3, 2],
        [3, 2, 1],
    ];
    let batch = blackhole::seeded_batch(SEED, 200, true);
    let sym = batch.iter().all(|c: &ChargeConfiguration| {
        let ch = c.charges();
        let a: [i64; 8] = std::array::from_fn(|n| ch[n]);
        let d = blackhole::cayley_hyperdeterminant(&a);
        perms
            .iter()
            .all(|&p| blackhole::cayley_hyperdeterminant(&blackhole::permute_qubits(&a, p)) == d)
    });
    let product = blackhole::cayley_hyperdeterminant(&[1, 0, 0, 0, 0, 0, 0, 0]);
    Ok((
        sym && product == 0.into(),
        format!("S3 invariant {sym}, D(product) = {product}"),
    ))
}

fn stu() -> Result<(bool, String)> {
    let m = hexagon::build_hexagon()?;
    let d = blackhole::build_gamma_dictionary(&m)?;
    let fr = hexagon::flag_removal_components(&m, DEFAULT_ELEMENT_BUDGET)?;
    let q = hexagon::stu_quadruples(&fr.coxeter, &m, &blackhole::stu_supports(&d));
    let ok = q.len() == 7 && q.iter().all(|x| x.distances.iter().all(|&d| d == 4));
    let first: Vec<String> = q[0].labels.iter().map(HexLabel::to_string).collect();
    Ok((
        ok,
        format!(
            "{} quadruples at mutual distance 4, first {}",
            q.len(),
            first.join(" ")
        ),
    ))
}

fn main() -> ExitCode {
    let criteria: [(&str, Check, u64); 16] = [
        ("operator census", census, 1),
        ("product table", table1, 1),
        ("row and column structure", rows_columns, 1),
        ("order-7 automorphism and orbits", alpha, 5),
        ("PSL(2,7) relations and order", psl27, 10),
        ("Clifford and so(8)", clifford, 5),
        ("generalized hexagon", hexagon_axioms, 5),
        ("sub-structures", substructures, 10),
        ("automorphisms and copies", automorphisms, 60),
        ("Klein quadric", klein, 5),
        ("mutually unbiased bases", mubs, 5),
        ("J4 cross-form identity", cross_form, 30),
        ("J4 and Pfaffian invariance", invariance, 30),
        ("a-letter truncation", truncation, 30),
        ("hyperdeterminant symmetry", hyperdeterminant, 5),
        ("STU quadruples", stu, 10),
    ];
    let mut failed = 0;
    for (i, (name, check, limit)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = check();
        let elapsed = start.elapsed();
        let in_time = elapsed <= Duration::from_secs(*limit);
        let (ok, detail) = match result {
            Ok((ok, detail)) => (ok && in_time, detail),
            Err(e) => (false, e.to_string()),
        };
        failed += usize::from(!ok);
        println!(
            "{} {:02} {name}: {detail} [{:.2}s/{limit}s]",
            if ok { "PASS" } else { "FAIL" },
            i + 1,
            elapsed.as_secs_f64()
        );
    }
    println!("{}/16 criteria passed", 16 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
