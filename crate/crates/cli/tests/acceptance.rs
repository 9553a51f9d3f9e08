//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit if any
//! criterion fails. Runs as a plain binary so the lines always show.

use std::path::PathBuf;
use std::process::Command;
use std::sync::Arc;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use semibrick::algebra::fixtures::{self, kronecker_point};
use semibrick::census::{bbt_witness, brick_census, enumerate_reps, greedy_orthogonal_family, orthogonality_graph, rep_points};
use semibrick::geometry::{generic_param_estimate, geometry_report};
use semibrick::homology::Weight;
use semibrick::rep::{end_dim, extract_semibrick, hom_dim, is_hom_orthogonal, is_semibrick};
use semibrick::stability::{coray_theta, homogeneous_stability_witness};
use semibrick::{BoundQuiverAlgebra, Matrix, Representation, Scalar, F2, F3, F5};

const CAP: u64 = 1 << 20;

type Check = Result<(), String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn lib<T>(r: semibrick::Result<T>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn fixture_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

fn random_scalar<S: Scalar>(rng: &mut ChaCha8Rng) -> S {
    S::from_index(rng.gen_range(0..S::order().unwrap())).unwrap()
}

/// Uniform point of `rep(A, d)(F_q)` by rejection sampling.
fn random_point<S: Scalar>(algebra: &Arc<BoundQuiverAlgebra<S>>, dims: &[usize], rng: &mut ChaCha8Rng) -> Representation<S> {
    loop {
        let maps = algebra
            .quiver()
            .arrows()
            .iter()
            .map(|a| {
                let (r, c) = (dims[a.target], dims[a.source]);
                Matrix::from_vec(r, c, (0..r * c).map(|_| random_scalar(rng)).collect())
            })
            .collect();
        if let Ok(x) = Representation::new(algebra.clone(), dims.to_vec(), maps) {
            return x;
        }
    }
}

fn random_dims(rank: usize, max_total: usize, rng: &mut ChaCha8Rng) -> Vec<usize> {
    loop {
        let dims: Vec<usize> = (0..rank).map(|_| rng.gen_range(0..=max_total)).collect();
        if (1..=max_total).contains(&dims.iter().sum()) {
            return dims;
        }
    }
}

/// Grows a Hom-orthogonal set from random points, skipping modules whose
/// endomorphism ring is too large to enumerate.
fn orthogonal_set<S: Scalar>(
    algebra: &Arc<BoundQuiverAlgebra<S>>,
    max_total: usize,
    size: usize,
    rng: &mut ChaCha8Rng,
) -> Result<Vec<Representation<S>>, String> {
    let q = S::order().unwrap() as f64;
    let mut set: Vec<Representation<S>> = Vec::new();
    for _ in 0..64 {
        if set.len() == size {
            break;
        }
        let x = random_point(algebra, &random_dims(algebra.rank(), max_total, rng), rng);
        if q.powi(lib(end_dim(&x))? as i32) > CAP as f64 {
            continue;
        }
        let mut ok = true;
        for y in &set {
            ok &= lib(is_hom_orthogonal(&x, y))?;
        }
        if ok {
            set.push(x);
        }
    }
    Ok(set)
}

fn extraction_case<S: Scalar>(which: usize, seed: u64) -> Check {
    // Kronecker modules stay at total dimension 3: in dimension (2,2) over a
    // finite field there are regular modules whose endomorphism ring is a
    // larger field and which contain no brick at all.
    let (algebra, max_total) = match which {
        0 => (fixtures::local_dual_numbers::<S>(), 4),
        1 => (fixtures::a2::<S>(), 4),
        _ => (fixtures::kronecker::<S>(), 3),
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let size = rng.gen_range(1..=3);
    let set = orthogonal_set(&algebra, max_total, size, &mut rng)?;
    let out = lib(extract_semibrick(&set, CAP))?;
    let bricks: Vec<_> = out.extractions.iter().map(|e| e.brick.clone()).collect();
    ensure(bricks.len() == set.len(), || "size changed".into())?;
    ensure(lib(is_semibrick(&bricks))?.is_ok(), || "extracted set is not a semibrick".into())?;
    ensure(lib(out.certificate.verify())?, || "certificate does not verify".into())?;
    for (e, x) in out.extractions.iter().zip(&set) {
        ensure(
            e.inclusion.is_injective() && e.inclusion.source() == &e.brick && e.inclusion.target() == x,
            || "brick is not certified as a submodule".into(),
        )?;
        ensure(
            e.surjection.is_surjective() && e.surjection.source() == x && e.surjection.target() == &e.brick,
            || "brick is not certified as a quotient".into(),
        )?;
    }
    Ok(())
}

fn criterion_1() -> Check {
    for case in 0..200u64 {
        let which = (case % 3) as usize;
        let seed = 0x5eed_0000 + case;
        let r = if (case / 3) % 2 == 0 {
            extraction_case::<F2>(which, seed)
        } else {
            extraction_case::<F3>(which, seed)
        };
        r.map_err(|e| format!("case {case}: {e}"))?;
    }
    Ok(())
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

fn brick_finite_case(algebra: &Arc<BoundQuiverAlgebra<F2>>, name: &str) -> Check {
    let n = algebra.rank();
    let report = lib(bbt_witness(algebra, 4, CAP))?;
    let ind: Vec<_> = report.indecomposables.iter().map(|c| c.representative.clone()).collect();
    // Oracle: every subset checked pairwise, no clique search involved.
    let orthogonal = |s: &[usize]| -> Result<bool, String> {
        for (a, &i) in s.iter().enumerate() {
            for &j in &s[a + 1..] {
                if !lib(is_hom_orthogonal(&ind[i], &ind[j]))? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    };
    for s in subsets(ind.len(), n + 1) {
        ensure(!orthogonal(&s)?, || format!("{name}: orthogonal set of size n+1: {s:?}"))?;
    }
    let mut rank_semibricks = Vec::new();
    for s in subsets(ind.len(), n) {
        let all_bricks = s.iter().all(|&i| lib(end_dim(&ind[i])).map(|e| e == 1).unwrap_or(false));
        if all_bricks && orthogonal(&s)? {
            rank_semibricks.push(s);
        }
    }
    ensure(rank_semibricks.len() == 1, || format!("{name}: {} semibricks of size n", rank_semibricks.len()))?;
    ensure(rank_semibricks[0].iter().all(|&i| ind[i].total_dim() == 1), || {
        format!("{name}: the size-n semibrick is not the simples")
    })?;
    ensure(
        report.max_orthogonal.len() == n && !report.brick_infinite_witnessed && report.unique_rank_semibrick_is_simples,
        || format!("{name}: library report disagrees with the exhaustive check"),
    )
}

fn criterion_2() -> Check {
    brick_finite_case(&fixtures::a2::<F2>(), "A2")?;
    brick_finite_case(&fixtures::a3::<F2>(), "A3")
}

fn kronecker_bricks_case<S: Scalar>() -> Check {
    let q = S::order().unwrap();
    let k = fixtures::kronecker::<S>();
    let census = lib(brick_census(&k, 2, CAP))?;
    // Oracle: points of the projective line, (q^2 - 1) / (q - 1).
    let expected = ((q * q - 1) / (q - 1)) as usize;
    ensure(census.classes.len() == expected, || {
        format!("q = {q}: {} bricks, expected {expected}", census.classes.len())
    })?;
    let graph = lib(orthogonality_graph(&census.bricks()))?;
    ensure(graph.edges.len() == expected * (expected - 1) / 2, || format!("q = {q}: graph not complete"))?;
    let report = lib(bbt_witness(&k, 2, CAP))?;
    ensure(report.brick_infinite_witnessed, || format!("q = {q}: no brick-infinite witness"))
}

fn criterion_3() -> Check {
    kronecker_bricks_case::<F2>()?;
    kronecker_bricks_case::<F3>()?;
    kronecker_bricks_case::<F5>()
}

/// `R_λ = (1, λ)` for every `λ` in `F_q`, then `R_∞ = (0, 1)`.
fn kronecker_line<S: Scalar>(k: &Arc<BoundQuiverAlgebra<S>>) -> Vec<Representation<S>> {
    let q = S::order().unwrap() as i64;
    let mut out: Vec<_> = (0..q).map(|l| kronecker_point(k, 1, l)).collect();
    out.push(kronecker_point(k, 0, 1));
    out
}

fn homogeneous_case<S: Scalar>() -> Check {
    let k = fixtures::kronecker::<S>();
    for x in kronecker_line(&k) {
        let (theta, v) = lib(homogeneous_stability_witness(&x, CAP))?;
        ensure(theta == Weight(vec![1, -1]) && v.stable, || format!("q = {}: {x:?} gives {theta}", S::order().unwrap()))?;
    }
    Ok(())
}

fn criterion_4() -> Check {
    homogeneous_case::<F2>()?;
    homogeneous_case::<F3>()?;
    homogeneous_case::<F5>()
}

fn coray_case<S: Scalar>() -> Check {
    let k = fixtures::kronecker::<S>();
    for x in kronecker_line(&k) {
        let (theta, v) = lib(coray_theta(std::slice::from_ref(&x), CAP))?;
        ensure(theta == Weight(vec![1, -1]) && v.stable, || format!("{x:?} gives {theta}"))?;
    }
    Ok(())
}

fn criterion_5() -> Check {
    coray_case::<F2>()?;
    coray_case::<F3>()?;
    coray_case::<F5>()
}

fn criterion_6() -> Check {
    let algebras = [("A2", fixtures::a2::<F2>()), ("KRON", fixtures::kronecker::<F2>())];
    let mut dichotomy_cases = 0;
    for (name, alg) in &algebras {
        for d1 in 0..=2 {
            for d2 in 0..=2 {
                if d1 + d2 == 0 {
                    continue;
                }
                for class in lib(enumerate_reps(alg, &[d1, d2], CAP))?.classes {
                    let x = &class.representative;
                    let r = lib(geometry_report(x, 32, CAP))?;
                    let at = || format!("{name} {x:?}");
                    ensure(r.tangent_dim - r.orbit_dim == r.ext1_self, || format!("{}: tangent - orbit != Ext^1", at()))?;
                    ensure(r.ext1_self != 0 || r.tangent_dim == r.orbit_dim, || format!("{}: rigid but tangent != orbit", at()))?;
                    if let Some(d) = &r.dichotomy {
                        dichotomy_cases += 1;
                        ensure(d.tau_rigid == d.tangent_equals_orbit, || format!("{}: dichotomy fails", at()))?;
                    }
                }
            }
        }
    }
    ensure(dichotomy_cases > 0, || "no brick of pd <= 1 was examined".into())
}

fn criterion_7() -> Check {
    let loc = fixtures::local_dual_numbers::<F2>();
    let s = semibrick::algebra::simple(&loc, 0);
    let r = lib(geometry_report(&s, 32, CAP))?;
    ensure((r.orbit_dim, r.tangent_dim, r.ext1_self) == (0, 1, 1), || {
        format!("orbit {}, tangent {}, Ext^1 {}", r.orbit_dim, r.tangent_dim, r.ext1_self)
    })?;
    ensure(r.tangent_bound_holds, || "tangent - orbit > Ext^1".into())?;
    ensure(r.variety_bound_strict() == Some(true), || {
        format!("variety-level tangent {:?} does not give a strict inequality", r.variety_tangent_dim)
    })
}

fn run_cli(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_semibrick"))
        .args(args)
        .current_dir(fixture_dir())
        .output()
        .expect("binary runs");
    (out.status.code().unwrap_or(-1), String::from_utf8_lossy(&out.stdout).into_owned())
}

fn criterion_8() -> Check {
    let base = ["--format", "json", "zwara", "--shape", "3", "s1_plus_s2.rep", "p1.rep", "s2.rep", "--maps"];
    let verdict = |maps: &str| -> Result<(i32, bool, bool), String> {
        let mut args = base.to_vec();
        args.push(maps);
        let (code, out) = run_cli(&args);
        let v: serde_json::Value = serde_json::from_str(&out).map_err(|e| format!("{maps}: {e}"))?;
        let report = &v["result"]["report"];
        Ok((code, report["exact"] == true, report["degenerates"] == true))
    };
    let good = verdict("zwara_maps.txt")?;
    ensure(good == (0, true, true), || format!("shipped certificate: {good:?}"))?;
    let bad = verdict("zwara_maps_corrupted.txt")?;
    ensure(bad == (1, false, false), || format!("corrupted certificate: {bad:?}"))
}

fn greedy_case<S: Scalar>() -> Check {
    let k = fixtures::kronecker::<S>();
    let q = S::order().unwrap() as usize;
    ensure(lib(generic_param_estimate(&k, &[1, 1], CAP))? == 1, || "KRON estimate is not 1".into())?;
    let g = lib(greedy_orthogonal_family(&k, &[1, 1], q + 1, CAP))?;
    ensure(g.reached && g.family.len() == q + 1, || format!("q = {q}: greedy family of {}", g.family.len()))?;
    for (i, x) in g.family.iter().enumerate() {
        for y in &g.family[i + 1..] {
            ensure(lib(is_hom_orthogonal(x, y))?, || "greedy family is not orthogonal".into())?;
        }
    }
    Ok(())
}

fn criterion_9() -> Check {
    let a2 = fixtures::a2::<F2>();
    ensure(lib(generic_param_estimate(&a2, &[1, 1], CAP))? == 0, || "A2 estimate is not 0".into())?;
    let points = lib(rep_points(&a2, &[1, 1], CAP))?;
    for x in &points {
        for y in &points {
            ensure(lib(hom_dim(x, y))? >= 1, || format!("Hom({x:?}, {y:?}) = 0"))?;
        }
    }
    greedy_case::<F2>()?;
    greedy_case::<F3>()?;
    greedy_case::<F5>()
}

fn criterion_10() -> Check {
    let commands: &[&[&str]] = &[
        &["hom", "--from", "s1.rep", "--to", "p1.rep"],
        &["brick", "--module", "r_lambda.rep"],
        &["semibrick", "s1.rep", "s2.rep"],
        &["extract", "loc_regular.rep"],
        &["tau", "s1.rep"],
        &["theta", "s1.rep"],
        &["pd", "loc_simple.rep"],
        &["stable", "--theta", "1,-1", "r_lambda.rep", "--field", "5"],
        &["stable", "--homogeneous", "r_lambda.rep", "--field", "3"],
        &["coray", "r_lambda.rep"],
        &["geometry", "r_lambda.rep"],
        &["geometry", "loc_simple.rep"],
        &["zwara", "--shape", "3", "s1_plus_s2.rep", "p1.rep", "s2.rep", "--maps", "zwara_maps.txt"],
        &["census", "--algebra", "kron.bq", "--dim", "2", "--field", "3"],
        &["census", "--algebra", "a3.bq", "--dim", "3"],
        &["orthograph", "--algebra", "kron.bq", "--dim", "1,1", "--field", "5"],
        &["bbt", "--algebra", "a2.bq", "--dmax", "4"],
        &["bbt", "--algebra", "kron.bq", "--dmax", "2", "--field", "3"],
        &["cparam", "--algebra", "kron.bq", "--dim", "1,1", "--field", "5", "--target", "6"],
    ];
    for cmd in commands {
        let run = |threads: &str| {
            let mut args = vec!["--format", "json", "--threads", threads];
            args.extend_from_slice(cmd);
            run_cli(&args)
        };
        let (c1, one) = run("1");
        let (c8, eight) = run("8");
        ensure(c1 != 2 && !one.is_empty(), || format!("{cmd:?} failed with exit code {c1}"))?;
        ensure(c1 == c8 && one == eight, || format!("{cmd:?}: output differs between 1 and 8 threads"))?;
    }
    Ok(())
}

fn main() {
    let criteria: [(&str, fn() -> Check); 10] = [
        ("Hom-orthogonal families extract to semibricks of equal size (200 random sets)", criterion_1),
        ("A2 and A3 up to dimension 4: no orthogonal n+1 set, simples are the only size-n semibrick", criterion_2),
        ("Kronecker dimension 2 has q+1 pairwise orthogonal bricks; brick-infinite witnessed", criterion_3),
        ("homogeneous Kronecker bricks are stable for theta = (1,-1)", criterion_4),
        ("chain weight of a single R_lambda is (1,-1) and R_lambda is stable", criterion_5),
        ("hereditary tangent/orbit/Ext^1 equality and tau-rigidity dichotomy", criterion_6),
        ("dual-numbers simple: orbit 0, tangent 1, Ext^1 1, strict at the variety level", criterion_7),
        ("shipped degeneration certificate verifies, corrupted one does not", criterion_8),
        ("generic parameters: A2 gives 0 with Hom >= 1 everywhere, Kronecker gives 1 with q+1 family", criterion_9),
        ("JSON reports identical under --threads 1 and --threads 8", criterion_10),
    ];
    let mut failed = 0;
    for (i, (desc, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(check).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(()) => println!("criterion {:>2}: PASS  {desc} ({secs:.1}s)", i + 1),
            Err(e) => {
                failed += 1;
                println!("criterion {:>2}: FAIL  {desc} ({secs:.1}s): {e}", i + 1);
            }
        }
    }
    if failed > 0 {
        println!("{failed} of {} criteria failed", criteria.len());
        std::process::exit(1);
    }
    println!("all {} criteria passed", criteria.len());
}
