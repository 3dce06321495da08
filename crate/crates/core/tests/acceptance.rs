mod common;

use std::process::Command;
use std::sync::Arc;
use std::time::Instant;

use common::*;
use lunaquot::action::localized_invariants;
use lunaquot::gradedalg::{invariant_subring, GradedRing, RationalPoint};
use lunaquot::luna::{
    base_change, default_probes, etale_at, fiberwise_inert_over, grid_probes, is_strongly_equivariant, luna_verdict,
    pointwise_inert_at, quotient_morphism, GradedRingMap,
};
use lunaquot::poly::Polynomial;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn e(err: lunaquot::Error) -> String {
    err.to_string()
}

fn shown(ring: &GradedRing, ps: &[Polynomial]) -> Vec<String> {
    ps.iter().map(|p| ring.show(p)).collect()
}

/// Generators of the invariant ring of the named fixture ring, as strings.
fn invariants_of(file: &str, ring: &str) -> Result<(Vec<String>, Vec<String>), String> {
    let s = fixture(file);
    let a = &s.ring(ring).map_err(e)?.ring;
    let inv = invariant_subring(a).map_err(e)?;
    Ok((
        shown(a, &inv.generators),
        inv.relation_basis().iter().map(|r| inv.show(r)).collect(),
    ))
}

fn sign_action_on_the_plane() -> Check {
    let (gens, rels) = invariants_of("badexam1", "A")?;
    ensure!(gens == ["x^2", "x*y", "y^2"], "invariants {gens:?}");
    ensure!(rels == ["u2^2 - u1*u3"], "relations {rels:?}");
    let s = fixture("badexam1");
    let f = &s.map("f").map_err(e)?.map;
    for xp in grid_probes(f.target(), &[0, 1, -1, 2]).map_err(e)? {
        ensure!(etale_at(f, &xp).map_err(e)?, "not étale at {}", xp.show(f.target()));
    }
    let origin = RationalPoint::origin(f.source()).map_err(e)?;
    ensure!(
        !fiberwise_inert_over(f, &origin).map_err(e)?.holds,
        "fiberwise inert over the origin"
    );
    ensure!(
        !is_strongly_equivariant(f).map_err(e)?.holds,
        "reported strongly equivariant"
    );
    Ok(())
}

fn sign_action_with_negative_weight() -> Check {
    let (gens, _) = invariants_of("badexam1prime", "A")?;
    ensure!(gens == ["x^2*z", "x*y*z", "y^2*z"], "invariants {gens:?}");
    Ok(())
}

fn open_chart_of_a_weighted_space() -> Check {
    let (gens, _) = invariants_of("badexam2", "A")?;
    ensure!(gens == ["x*y", "x*z"], "invariants {gens:?}");
    let s = fixture("badexam2");
    let a = s.ring("A").map_err(e)?.ring.clone();
    let z = a.parse("z").map_err(e)?;
    let chart = localized_invariants(&a, &z).map_err(e)?;
    let local = Arc::new(chart.ring.clone());
    let got = shown(&local, &chart.invariants.generators);
    // w is the inverse of z
    ensure!(got == ["x*z", "y*w"], "localized invariants {got:?}");
    let images: Vec<Polynomial> = (0..a.nvars()).map(|i| local.var(i)).collect();
    let f = GradedRingMap::new(a.clone(), local.clone(), images).map_err(e)?;
    let xp = RationalPoint::from_i64(&local, &[0, 0, 1, 1]).map_err(e)?;
    let pw = pointwise_inert_at(&f, &xp).map_err(e)?;
    ensure!(
        pw.target_special && !pw.source_special,
        "special-to-special holds at (0,0,1)"
    );
    ensure!(
        !is_strongly_equivariant(&f).map_err(e)?.holds,
        "chart inclusion reported strongly equivariant"
    );
    Ok(())
}

fn hilbert_bases_against_box_search() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for i in 0..60 {
        let s = random_system(&mut rng);
        check_hilbert_basis(&s, 8).map_err(|m| format!("system {i} ({} over {}): {m}", s.len(), s.group()))?;
    }
    Ok(())
}

fn minimal_generators_against_subsets() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    for i in 0..40 {
        let (a, gens) = random_mingens_instance(&mut rng);
        check_mingens(&a, &gens).map_err(|m| format!("instance {i}: {m}"))?;
    }
    Ok(())
}

fn all_maps() -> Vec<(String, GradedRingMap)> {
    fixtures()
        .into_iter()
        .flat_map(|(file, s)| s.maps.into_iter().map(move |m| (format!("{file}/{}", m.name), m.map)))
        .collect()
}

fn luna_criterion_matches_strong_equivariance() -> Check {
    let maps = all_maps();
    ensure!(maps.len() >= 12, "only {} fixture maps", maps.len());
    for (name, f) in &maps {
        let strong = is_strongly_equivariant(f).map_err(e)?.holds;
        let luna = luna_verdict(f, &default_probes(f.target()).map_err(e)?).map_err(e)?;
        ensure!(
            luna.criterion_holds == strong,
            "{name}: luna {} strong {strong}",
            luna.criterion_holds
        );
    }
    Ok(())
}

fn groebner_bases_of_homogeneous_ideals() -> Check {
    use rand::Rng;
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..30 {
        let ring = random_z2_ring(&mut rng);
        let n = ring.nvars();
        let mut gens = Vec::new();
        for _ in 0..rng.gen_range(1..=3) {
            let mut p = Polynomial::zero(ring.field(), n);
            for _ in 0..3 {
                let ex: Vec<u32> = (0..n).map(|_| rng.gen_range(0..3)).collect();
                p = &p + &ring.monomial(&ex).scale(&ring.field().from_i64(rng.gen_range(-3..=3)));
            }
            let comps = p.homogeneous_components(ring.group(), ring.degrees()).map_err(e)?;
            gens.extend(comps.into_values().next());
        }
        check_homogeneous_basis(&ring, &gens)?;
    }
    Ok(())
}

fn invariants_in_two_steps() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..30 {
        check_two_step_invariants(&random_z2_ring(&mut rng))?;
    }
    Ok(())
}

fn same_ring(a: &GradedRing, b: &GradedRing) -> bool {
    a.names() == b.names() && a.degrees() == b.degrees() && a.relations().equals(b.relations()).unwrap_or(false)
}

fn strong_maps_closed_under_composition_and_base_change() -> Check {
    let mut strong = Vec::new();
    for (name, f) in all_maps() {
        if is_strongly_equivariant(&f).map_err(e)?.holds {
            strong.push((name, f));
        }
    }
    let mut checked = 0;
    for (n1, f) in &strong {
        for (n2, g) in &strong {
            if same_ring(f.target(), g.source()) {
                let g1 = GradedRingMap::new(f.target().clone(), g.target().clone(), g.images().to_vec()).map_err(e)?;
                let fg = f.compose(&g1).map_err(e)?;
                ensure!(is_strongly_equivariant(&fg).map_err(e)?.holds, "{n1} then {n2}");
                checked += 1;
            }
            if same_ring(f.source(), g.source()) {
                let g1 = GradedRingMap::new(f.source().clone(), g.target().clone(), g.images().to_vec()).map_err(e)?;
                let bc = base_change(f, &g1).map_err(e)?;
                ensure!(is_strongly_equivariant(&bc).map_err(e)?.holds, "{n1} along {n2}");
                checked += 1;
            }
        }
    }
    ensure!(checked >= 10, "only {checked} pairs");
    Ok(())
}

fn surjections_give_surjections_of_quotients() -> Check {
    let mut checked = 0;
    for (name, f) in all_maps() {
        let b = f.target();
        let mut onto = true;
        for i in 0..b.nvars() {
            onto &= lunaquot::groebner::subalgebra_membership(&b.var(i), f.images(), b.relations())
                .map_err(e)?
                .is_some();
        }
        if onto {
            ensure!(quotient_morphism(&f).map_err(e)?.is_surjective().map_err(e)?, "{name}");
            checked += 1;
        }
    }
    ensure!(checked >= 3, "only {checked} surjections");
    Ok(())
}

fn cut_ideals_pull_back() -> Check {
    let mut checked = 0;
    for (name, f) in all_maps() {
        if f.source().group().is_integers() && is_strongly_equivariant(&f).map_err(e)?.holds {
            check_cut_ideals(&f).map_err(|m| format!("{name}: {m}"))?;
            checked += 1;
        }
    }
    ensure!(checked >= 5, "only {checked} maps");
    Ok(())
}

fn smooth_fixed_loci() -> Check {
    for (file, s) in fixtures() {
        for r in &s.rings {
            check_smooth_fixed_locus(&r.ring).map_err(|m| format!("{file}/{}: {m}", r.name))?;
        }
    }
    Ok(())
}

fn report_bytes(args: &[&str]) -> Result<Vec<u8>, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_lunaquot"))
        .args(args)
        .output()
        .map_err(|err| err.to_string())?;
    ensure!(
        out.status.success(),
        "exit {:?}: {}",
        out.status.code(),
        String::from_utf8_lossy(&out.stderr)
    );
    Ok(out.stdout)
}

fn deterministic_reports() -> Check {
    let dir = fixture_dir().display().to_string();
    let first = report_bytes(&["report", &dir, "--json"])?;
    for _ in 0..2 {
        ensure!(
            report_bytes(&["report", &dir, "--json"])? == first,
            "reports differ between runs"
        );
    }
    for t in ["1", "4", "8"] {
        ensure!(
            report_bytes(&["--threads", t, "report", &dir, "--json"])? == first,
            "report differs with {t} threads"
        );
    }
    Ok(())
}

type Criterion = (&'static str, fn() -> Check);

fn main() {
    let criteria: &[Criterion] = &[
        (
            "sign action on the plane: invariants, étale cover, not fiberwise inert, not strong",
            sign_action_on_the_plane,
        ),
        (
            "sign action with a weight -2 variable: invariants",
            sign_action_with_negative_weight,
        ),
        (
            "open chart of a weighted space: invariants, localized invariants, special-to-special fails",
            open_chart_of_a_weighted_space,
        ),
        (
            "Hilbert bases match box search on 60 random systems",
            hilbert_bases_against_box_search,
        ),
        (
            "minimal generator counts match subset search on 40 random instances",
            minimal_generators_against_subsets,
        ),
        (
            "Luna criterion agrees with strong equivariance on every fixture map",
            luna_criterion_matches_strong_equivariance,
        ),
        (
            "Groebner bases of homogeneous ideals are homogeneous",
            groebner_bases_of_homogeneous_ideals,
        ),
        (
            "invariants of a sum grading can be taken one factor at a time",
            invariants_in_two_steps,
        ),
        (
            "strong equivariance is closed under composition and base change",
            strong_maps_closed_under_composition_and_base_change,
        ),
        (
            "quotients of surjections are surjective",
            surjections_give_surjections_of_quotients,
        ),
        (
            "cut ideals of X+ and X- extend along strongly equivariant maps",
            cut_ideals_pull_back,
        ),
        ("fixed loci are smooth at smooth fixed points", smooth_fixed_loci),
        (
            "report --json is identical across runs and thread counts",
            deterministic_reports,
        ),
    ];
    let start = Instant::now();
    let mut failed = 0;
    for (name, check) in criteria {
        let t = Instant::now();
        match check() {
            Ok(()) => println!("PASS  {name}  ({} ms)", t.elapsed().as_millis()),
            Err(msg) => {
                failed += 1;
                println!("FAIL  {name}: {msg}");
            }
        }
    }
    println!(
        "{} of {} criteria passed in {:.1} s",
        criteria.len() - failed,
        criteria.len(),
        start.elapsed().as_secs_f64()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
