//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

use std::path::{Path, PathBuf};
use std::process::{Command, Stdio};
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

use hopfoid::bialgebroid::{check_hopf_algebroid, Bialgebroid, HopfAlgebroid};
use hopfoid::category::{check_coupled_category, CoupledHopfCategory, HopfCategory};
use hopfoid::constructions::{
    from_hopf_algebra, from_weak_hopf, groupoid_algebra, library, matrix_hopf_algebroid, GroupoidPresentation,
    HopfAlgebraData,
};
use hopfoid::correspondence::{algebroid_to_category, fibered_structure, round_trip_check};
use hopfoid::galois::{galois_correspondence, galois_maps, phi_maps, ComoduleAlgebra};
use hopfoid::io::{parse_structure, to_string, Structure};
use hopfoid::linalg::{try_inverse, unit_vec, Matrix, Scalar, Subspace};
use hopfoid::report::Report;
use hopfoid::ring::{convolution_inverse, Algebra, ConvolutionOutcome, ConvolutionProblem};

type Outcome = Result<String, String>;

fn golden_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

fn goldens() -> Vec<(String, Vec<u8>)> {
    let mut out: Vec<_> = std::fs::read_dir(golden_dir())
        .expect("golden directory")
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .map(|p| (p.file_name().unwrap().to_string_lossy().into_owned(), std::fs::read(&p).unwrap()))
        .collect();
    out.sort();
    out
}

fn need(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn clean(name: &str, rep: &Report) -> Result<(), String> {
    match rep.first_failure() {
        None => Ok(()),
        Some(row) => Err(format!("{name}: {} failed", row.axiom)),
    }
}

fn within(limit: Duration, start: Instant) -> Result<(), String> {
    let t = start.elapsed();
    need(t < limit, || format!("took {t:?}, limit {limit:?}"))
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    for n in 1..=3 {
        let h = matrix_hopf_algebroid(n).map_err(|e| e.to_string())?;
        clean(&format!("matrix {n}"), &check_hopf_algebroid(&h))?;
        let d = n * n;
        for i in 0..n {
            for j in 0..n {
                let e = i * n + j;
                need(h.right.counit.column(e) == unit_vec(n, j), || format!("ε_R(E_{}{}) ≠ e_{}", i + 1, j + 1, j + 1))?;
                need(h.left.counit.column(e) == unit_vec(n, i), || format!("ε_L(E_{}{}) ≠ e_{}", i + 1, j + 1, i + 1))?;
                need(h.antipode.column(e) == unit_vec(d, j * n + i), || format!("S(E_{}{}) ≠ E_{}{}", i + 1, j + 1, j + 1, i + 1))?;
                let grouplike = unit_vec(d * d, e * d + e);
                need(h.right.delta.column(e) == grouplike, || format!("Δ_R(E_{}{}) not grouplike", i + 1, j + 1))?;
                need(h.left.delta.column(e) == grouplike, || format!("Δ_L(E_{}{}) not grouplike", i + 1, j + 1))?;
            }
        }
    }
    within(Duration::from_secs(5), start)?;
    Ok(format!("n = 1, 2, 3 in {:?}", start.elapsed()))
}

fn criterion_2() -> Outcome {
    let start = Instant::now();
    let lib = library();
    for (name, h) in &lib {
        clean(name, &check_hopf_algebroid(h))?;
    }
    within(Duration::from_secs(30), start)?;
    Ok(format!("{} examples in {:?}", lib.len(), start.elapsed()))
}

/// The same structure written in another basis: `p` sends old basis vectors to new ones.
fn transport(h: &HopfAlgebroid, p: &Matrix) -> HopfAlgebroid {
    let q = try_inverse(p).expect("basis map is invertible");
    let pp = p.kron(p);
    let qq = q.kron(&q);
    let alg = h.algebra();
    let algebra = Algebra::new(p.mul(alg.mul_tensor()).mul(&qq), p.mul_vec(alg.unit())).expect("shapes");
    let side = |b: &Bialgebroid| {
        Bialgebroid::new(
            b.side,
            b.base.clone(),
            algebra.clone(),
            p.mul(&b.source),
            p.mul(&b.target),
            pp.mul(&b.delta).mul(&q),
            b.counit.mul(&q),
        )
        .expect("shapes")
    };
    HopfAlgebroid::new(side(&h.left), side(&h.right), p.mul(&h.antipode).mul(&q)).expect("shapes")
}

fn criterion_3() -> Outcome {
    for n in 1..=3 {
        let g = GroupoidPresentation::pair(n);
        let from_groupoid = groupoid_algebra(&g).map_err(|e| e.to_string())?;
        // the arrow i ← j goes to E_ij
        let p = Matrix::from_fn(n * n, n * n, |r, c| {
            let a = &g.arrows[c];
            if r == a.target * n + a.source {
                Scalar::one()
            } else {
                Scalar::zero()
            }
        });
        let moved = transport(&from_groupoid, &p);
        let m = matrix_hopf_algebroid(n).map_err(|e| e.to_string())?;
        need(moved.algebra() == m.algebra(), || format!("n = {n}: algebras differ"))?;
        for (a, b) in [(&moved.left, &m.left), (&moved.right, &m.right)] {
            let side = a.side.name();
            need(a.source == b.source && a.target == b.target, || format!("n = {n}: {side} source/target differ"))?;
            need(a.delta == b.delta, || format!("n = {n}: Δ_{side} differs"))?;
            need(a.counit == b.counit, || format!("n = {n}: ε_{side} differs"))?;
        }
        need(moved.antipode == m.antipode, || format!("n = {n}: antipodes differ"))?;
    }
    Ok("n = 1, 2, 3 entrywise".into())
}

fn criterion_4() -> Outcome {
    let lib = library();
    for (name, h) in &lib {
        clean(name, &round_trip_check(h))?;
    }
    Ok(format!("{} examples", lib.len()))
}

fn criterion_5() -> Outcome {
    let wanted = [
        "Σ fiber dims = dim H",
        "diagonal ⊆ Z",
        "(ε_L)_* ≠ 0 on Z",
        "(ε_R)_* ≠ 0 on Z",
        "Δ_L maps E(x,y) into E(x,y) ⊗ E(x,y)",
        "Δ_R maps E(x,y) into E(x,y) ⊗ E(x,y)",
        "S_* maps E(x,y) onto E(y,x)",
    ];
    let lib = library();
    for (name, h) in &lib {
        let f = fibered_structure(h);
        clean(name, &f.report)?;
        for w in wanted {
            need(f.report.row(w).is_some(), || format!("{name}: no row {w:?}"))?;
        }
    }
    Ok(format!("{} examples, {} propositions each", lib.len(), wanted.len()))
}

fn instances() -> Vec<(String, HopfAlgebroid, ComoduleAlgebra)> {
    let mut out = Vec::new();
    for (name, h) in library() {
        out.push((format!("{name}/regular"), h.clone(), ComoduleAlgebra::regular(&h)));
        out.push((format!("{name}/trivial"), h.clone(), ComoduleAlgebra::trivial(&h)));
        out.push((format!("{name}/doubled"), h.clone(), ComoduleAlgebra::doubled_trivial(&h)));
    }
    out
}

fn criterion_6() -> Outcome {
    let mut count = 0;
    for (name, h, m) in instances().into_iter().filter(|(n, ..)| !n.ends_with("/doubled")) {
        let sub = Subspace::image(&m.unit_map);
        let g = galois_maps(&h, &m, &sub).map_err(|e| format!("{name}: {e}"))?;
        need(g.coinvariants_equal && g.coinvariants_r == g.coinvariants_l, || format!("{name}: coinvariants differ"))?;
        need(g.factorization_holds, || format!("{name}: gal_L ≠ Φ ∘ gal_R"))?;
        let phi = phi_maps(&h, &m);
        clean(&name, &phi.report)?;
        need(phi.phi_inverse.is_some(), || format!("{name}: Φ has no inverse"))?;
        for row in ["Φ is bijective", "Φ⁻¹ Φ = id on M ⊗_R H", "Φ Φ⁻¹ = id on M ⊗_L H"] {
            need(phi.report.row(row).is_some(), || format!("{name}: {row} not checked"))?;
        }
        count += 1;
    }
    need(count >= 10, || format!("only {count} instances"))?;
    Ok(format!("{count} instances"))
}

fn criterion_7() -> Outcome {
    let (mut positive, mut negative) = (0, 0);
    let all = instances();
    for (name, h, m) in &all {
        let c = galois_correspondence(h, m).map_err(|e| format!("{name}: {e}"))?;
        need(c.equivalent(), || format!("{name}: algebroid and categorical verdicts differ"))?;
        let sub = Subspace::image(&m.unit_map);
        let g = galois_maps(h, m, &sub).map_err(|e| format!("{name}: {e}"))?;
        for v in &c.verdicts {
            let side = if v.side.name() == "R" { g.right_galois() } else { g.left_galois() };
            need(v.algebroid_galois == side, || format!("{name}: verdict disagrees with the Galois maps"))?;
        }
        if g.is_galois() {
            positive += 1;
        } else {
            negative += 1;
        }
        if name == "matrix-2/regular" {
            need(g.is_galois(), || "matrix-2 regular coaction is not Galois".into())?;
        }
        if name.ends_with("/doubled") {
            need(!g.is_galois(), || format!("{name} is Galois"))?;
        }
    }
    Ok(format!("{} instances agree, {positive} Galois, {negative} not", all.len()))
}

fn verify_structure(s: &Structure) -> Option<Report> {
    Some(match s {
        Structure::HopfAlgebra(h) => h.check(),
        Structure::HopfAlgebroid(h) => check_hopf_algebroid(h),
        Structure::WeakHopf(w) => match from_weak_hopf(w) {
            Ok(b) => b.report,
            Err(e) => {
                let mut rep = w.check();
                rep.fail("construction", hopfoid::report::Witness::note(e.to_string()));
                rep
            }
        },
        Structure::Category(c) => check_coupled_category(c),
        _ => return None,
    })
}

fn mutate(v: &mut Value, rng: &mut ChaCha8Rng) -> String {
    let names: Vec<String> = v["tensors"].as_object().unwrap().keys().cloned().collect();
    loop {
        let t = &names[rng.gen_range(0..names.len())];
        let entries = v["tensors"][t]["entries"].as_array_mut().unwrap();
        if entries.is_empty() {
            continue;
        }
        let k = rng.gen_range(0..entries.len());
        let old: Scalar = entries[k][1].as_str().unwrap().parse().unwrap();
        let shifts = [Scalar::one(), Scalar::from_int(-2), Scalar::i(), Scalar::from_frac(1, 2), Scalar::gaussian(1, -1)];
        let new = &old + &shifts[rng.gen_range(0..shifts.len())];
        entries[k][1] = Value::String(new.to_string());
        return format!("{t}[{k}] {old} -> {new}");
    }
}

fn criterion_8() -> Outcome {
    let start = Instant::now();
    let pool: Vec<(String, Value)> = goldens()
        .into_iter()
        .filter_map(|(name, bytes)| {
            let s = parse_structure(&bytes).ok()?;
            verify_structure(&s).filter(Report::passed)?;
            Some((name, serde_json::from_slice(&bytes).unwrap()))
        })
        .filter(|(name, _)| name != "matrix-3.json" && name != "pair-groupoid-3.json")
        .collect();
    need(!pool.is_empty(), || "no passing structure files".into())?;
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut rejected_at_parse = 0;
    for round in 0..50 {
        let (name, base) = &pool[rng.gen_range(0..pool.len())];
        let mut v = base.clone();
        let what = mutate(&mut v, &mut rng);
        let s = match parse_structure(v.to_string().as_bytes()) {
            Ok(s) => s,
            Err(_) => {
                rejected_at_parse += 1;
                continue;
            }
        };
        let rep = verify_structure(&s).expect("same kind");
        let caught = rep.failures().any(|r| r.witness.is_some());
        need(caught, || format!("round {round}: {name} {what} accepted silently"))?;
    }
    within(Duration::from_secs(60), start)?;
    Ok(format!(
        "50 mutations over {} files, all caught ({rejected_at_parse} at parse) in {:?}",
        pool.len(),
        start.elapsed()
    ))
}

fn idempotent_monoid_problem() -> (ConvolutionProblem, Matrix) {
    // k{1, e} with e² = e, both grouplike
    let algebra = Algebra::from_table(2, unit_vec(2, 0), |i, j| vec![(i.max(j), Scalar::one())]);
    let delta = Matrix::from_fn(4, 2, |r, c| if r == c * 2 + c { Scalar::one() } else { Scalar::zero() });
    let eta_eps = Matrix::from_fn(2, 2, |r, _| if r == 0 { Scalar::one() } else { Scalar::zero() });
    let p = ConvolutionProblem {
        algebra,
        left_delta: delta.clone(),
        left_target: eta_eps.clone(),
        right_delta: delta,
        right_target: eta_eps,
        intertwiners: vec![],
    };
    (p, Matrix::identity(2))
}

fn criterion_9() -> Outcome {
    for order in [1, 2, 4] {
        let data = HopfAlgebraData::cyclic_group(order);
        let h = from_hopf_algebra(&data).map_err(|e| e.to_string())?;
        let assoc = algebroid_to_category(&h).map_err(|e| e.to_string())?;
        let direct = CoupledHopfCategory::from_hopf_category(&HopfCategory::from_hopf_algebra(&data));
        let (a, b) = (&assoc.category, &direct);
        need(a.category.dims == b.category.dims, || format!("C{order}: hom dims differ"))?;
        need(a.category.compose == b.category.compose, || format!("C{order}: composition differs"))?;
        need(a.category.identities == b.category.identities, || format!("C{order}: identities differ"))?;
        need(a.left == b.left && a.right == b.right, || format!("C{order}: enrichments differ"))?;
        need(a.coupling == b.coupling, || format!("C{order}: coupling differs from S"))?;
        let s = convolution_inverse(&h.antipode_problem(), &Matrix::identity(order));
        need(s.solution() == Some(&data.antipode), || format!("C{order}: convolution inverse is not S"))?;
        let m = ComoduleAlgebra::regular(&h);
        let c = galois_correspondence(&h, &m).map_err(|e| e.to_string())?;
        need(c.equivalent() && c.verdicts.iter().all(|v| v.categorical_galois), || format!("C{order}: regular coaction"))?;
    }
    let (p, id) = idempotent_monoid_problem();
    match convolution_inverse(&p, &id) {
        ConvolutionOutcome::Inconsistent { rank, augmented_rank } => {
            Ok(format!("C1, C2, C4 match; idempotent monoid inconsistent (rank {rank} < {augmented_rank})"))
        }
        other => Err(format!("idempotent monoid: expected an inconsistent system, got {other:?}")),
    }
}

fn exit_code(args: &[&str], stdin: Option<&[u8]>) -> i32 {
    use std::io::Write;
    let mut c = Command::new(env!("CARGO_BIN_EXE_hopfoid"));
    c.env_remove("HOPFOID_MAX_DIM").args(args).stdout(Stdio::null()).stderr(Stdio::null());
    c.stdin(if stdin.is_some() { Stdio::piped() } else { Stdio::null() });
    let mut child = c.spawn().expect("binary runs");
    if let Some(bytes) = stdin {
        child.stdin.take().unwrap().write_all(bytes).unwrap();
    }
    child.wait().unwrap().code().unwrap_or(-1)
}

fn criterion_10() -> Outcome {
    let dir = golden_dir();
    let file = |n: &str| dir.join(n).to_string_lossy().into_owned();
    let matrix = file("matrix-2.json");
    let mut broken: Value = serde_json::from_slice(&std::fs::read(&matrix).unwrap()).unwrap();
    broken["tensors"]["antipode"]["entries"][0][1] = Value::String("2".into());
    let broken = broken.to_string();
    let cases: Vec<(&str, Vec<String>, Option<&[u8]>, i32)> = vec![
        ("verify passing", vec!["verify".into(), matrix.clone()], None, 0),
        ("galois regular", vec!["galois".into(), "--algebroid".into(), matrix.clone(), "--comodule".into(), file("comodule-regular-matrix-2.json")], None, 0),
        ("verify mutated", vec!["verify".into(), "-".into()], Some(broken.as_bytes()), 1),
        ("galois doubled", vec!["galois".into(), "--algebroid".into(), matrix.clone(), "--comodule".into(), file("comodule-doubled-matrix-2.json")], None, 1),
        ("malformed", vec!["verify".into(), "-".into()], Some(b"{\"kind\": 3}"), 2),
        ("missing file", vec!["verify".into(), file("absent.json")], None, 2),
        ("bad usage", vec!["verify".into()], None, 2),
    ];
    for (what, args, stdin, want) in &cases {
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        let got = exit_code(&args, *stdin);
        need(got == *want, || format!("{what}: exit {got}, expected {want}"))?;
    }
    let files = goldens();
    for (name, bytes) in &files {
        let s = parse_structure(bytes).map_err(|e| format!("{name}: {e}"))?;
        need(to_string(&s).as_bytes() == bytes.as_slice(), || format!("{name}: serialize ∘ parse is not the identity"))?;
    }
    Ok(format!("{} exit-code cases, {} golden files", cases.len(), files.len()))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("matrix example values", criterion_1),
        ("example-family closure", criterion_2),
        ("pair groupoid equals matrix example", criterion_3),
        ("algebroid/category round trip", criterion_4),
        ("fiberwise propositions", criterion_5),
        ("coinvariants and Φ on comodule algebras", criterion_6),
        ("Galois verdict equivalence", criterion_7),
        ("mutation robustness", criterion_8),
        ("degenerate cases", criterion_9),
        ("CLI contract", criterion_10),
    ];
    let mut failed = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("criterion {:>2} PASS {name}: {detail}", k + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL {name}: {why}", k + 1);
            }
        }
    }
    println!("{} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
