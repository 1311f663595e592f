//! Runs every acceptance criterion and prints one PASS/FAIL line each.

use std::time::{Duration, Instant};

use num_bigint::BigInt;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use toric_ccc::cohoracle::{case3_sandwich_check, hom_oracle_check, koszul_check};
use toric_ccc::exactlin::{Polyhedron, Rational};
use toric_ccc::fm::{
    contractibility_check_2d, fm_line_bundle_case1, fm_line_bundle_case2, fm_line_bundle_case3,
    poset_embedding_report, ViolationKind,
};
use toric_ccc::stackyfan::{
    a1_resolution_fan, crepant_a1, discrepancy_example, o_minus, p1, p112, p13, same_base_p12_p13, same_base_p13_p12,
    ContractionSetup, StackyFan,
};
use toric_ccc::thetapos::{ample_polytope, is_q_ample, lambda_skeleton, minkowski_sum, support};

type Outcome = Result<String, String>;
type Criterion = (&'static str, Duration, fn() -> Outcome);

fn big(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

fn q(n: i64, d: i64) -> Rational {
    Rational::new(n, d).unwrap()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn lib<T>(r: toric_ccc::Result<T>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn c1_same_base_bundles() -> Outcome {
    let s = same_base_p12_p13();
    let mut n = 0;
    for c1 in -10..=10i64 {
        for c2 in -5..=5i64 {
            let got = lib(fm_line_bundle_case1(&s, &big(&[c1, c2])))?;
            let want = big(&[(3 * c1).div_euclid(2), c2]);
            ensure(got.as_ref() == Some(&want), || format!("c=({c1},{c2}): {got:?}"))?;
            n += 1;
        }
    }
    Ok(format!("{n} bundles"))
}

fn c2_crepant_bundles() -> Outcome {
    let s = crepant_a1();
    let mut n = 0;
    for c1 in -8..=8i64 {
        for c2 in -8..=8i64 {
            let sum = c1 + c2;
            let got = lib(fm_line_bundle_case2(&s, &big(&[c1, c2])))?;
            ensure(got == big(&[c1, c2, sum.div_euclid(2)]), || format!("c=({c1},{c2}): {got:?}"))?;
            // blown-up side -> contracted side -> blown-up side
            let start = if sum % 2 == 0 { sum / 2 } else { (sum + 1) / 2 };
            let down = lib(fm_line_bundle_case3(&s, &big(&[c1, c2, start])))?;
            ensure(down.as_deref() == Some(&big(&[c1, c2])[..]), || {
                format!("({c1},{c2},{start}) pushes to {down:?}")
            })?;
            let back = lib(fm_line_bundle_case2(&s, &big(&[c1, c2])))?;
            let want = if sum % 2 == 0 { sum / 2 } else { (sum - 1) / 2 };
            ensure(back == big(&[c1, c2, want]), || format!("composite of ({c1},{c2},{start}) is {back:?}"))?;
            n += 1;
        }
    }
    Ok(format!("{n} bundles, composite checked"))
}

fn c3_discrepancy_bundles() -> Outcome {
    let s = discrepancy_example();
    for c1 in -8..=8i64 {
        for c2 in -8..=8i64 {
            let got = lib(fm_line_bundle_case2(&s, &big(&[c1, c2])))?;
            ensure(got == big(&[c1, c2, c1.div_euclid(2) + c2]), || format!("c=({c1},{c2}): {got:?}"))?;
        }
    }
    Ok("289 bundles".into())
}

fn c4_hom_oracle() -> Outcome {
    let fans: [(&str, StackyFan); 4] = [
        ("P1", p1()),
        ("P(1,3)", p13()),
        ("P(1,1,2)", p112()),
        ("A1 resolution", a1_resolution_fan()),
    ];
    let mut total = 0;
    for (name, f) in &fans {
        let r = lib(hom_oracle_check(f, 3, None))?;
        ensure(r.disagreements.is_empty(), || {
            format!("{name}: {} disagreements, first {:?}", r.disagreements.len(), r.disagreements[0])
        })?;
        ensure(r.nonzero > 0 && r.nonzero < r.pairs, || format!("{name}: degenerate sweep"))?;
        total += r.pairs;
    }
    Ok(format!("{total} pairs"))
}

fn c5_poset_embedding() -> Outcome {
    let fwd = lib(poset_embedding_report(&same_base_p12_p13(), 4))?;
    ensure(fwd.embedding && fwd.violations.is_empty(), || format!("{} violations", fwd.violations.len()))?;
    let setup = same_base_p13_p12();
    let rev = lib(poset_embedding_report(&setup, 4))?;
    ensure(!rev.embedding && !rev.violations.is_empty(), || "reversed weights embed".into())?;
    // re-decide each witness by inclusion of supports
    for v in &rev.violations {
        let img = |t| toric_ccc::fm::fm_case1(&setup, t);
        let a = lib(support(setup.fan_s(), &v.theta1, false))?;
        let b = lib(support(setup.fan_s(), &v.theta2, false))?;
        let fa = lib(support(setup.fan_r(), &lib(img(&v.theta1))?, false))?;
        let fb = lib(support(setup.fan_r(), &lib(img(&v.theta2))?, false))?;
        let (before, after) = (a.is_subset_of(&b), fa.is_subset_of(&fb));
        let expected = match v.kind {
            ViolationKind::NotPreserved => (true, false),
            ViolationKind::NotReflected => (false, true),
        };
        ensure((before, after) == expected, || format!("witness {} / {} does not hold up", v.theta1, v.theta2))?;
    }
    Ok(format!(
        "{} pairs embed; reversed: {} witnesses, first {} vs {}",
        fwd.pairs,
        rev.violations.len(),
        rev.violations[0].theta1,
        rev.violations[0].theta2
    ))
}

fn contraction_setups() -> Vec<(&'static str, ContractionSetup)> {
    vec![("crepant A1", crepant_a1()), ("O(-2)", o_minus(2)), ("O(-3)", o_minus(3))]
}

fn c6_sandwich() -> Outcome {
    let mut out = Vec::new();
    for (name, s) in contraction_setups() {
        let r = lib(case3_sandwich_check(&s, 3, 2))?;
        ensure(r.failures.is_empty(), || format!("{name}: {} failures, first {:?}", r.failures.len(), r.failures[0]))?;
        ensure(r.min_points >= 200, || format!("{name}: only {} points for some theta", r.min_points))?;
        ensure(r.staircases > 0, || format!("{name}: no staircase regions"))?;
        out.push(format!("{name} {} thetas x >= {} points", r.thetas, r.min_points));
    }
    Ok(out.join("; "))
}

fn c7_koszul() -> Outcome {
    let mut out = Vec::new();
    for (name, s) in contraction_setups() {
        let r = lib(koszul_check(&s, 3, 5))?;
        ensure(r.failures.is_empty(), || format!("{name}: {} failures, first {:?}", r.failures.len(), r.failures[0]))?;
        ensure(r.probes >= 200, || format!("{name}: only {} probes", r.probes))?;
        ensure(r.members > 0 && r.members < r.probes * r.thetas, || format!("{name}: degenerate membership"))?;
        out.push(format!("{name} {} probes", r.probes));
    }
    Ok(out.join("; "))
}

fn c8_contractibility() -> Outcome {
    let mut setups = contraction_setups();
    setups.insert(1, ("discrepancy", discrepancy_example()));
    let mut out = Vec::new();
    for (name, s) in setups {
        let r = lib(contractibility_check_2d(&s, 1, &q(12, 1), &q(1, 8)))?;
        ensure(r.disagreements.is_empty(), || {
            format!("{name}: {} disagreements, first {:?}", r.disagreements.len(), r.disagreements[0])
        })?;
        ensure(r.outside_box == 0, || format!("{name}: {} vanishing homs not seen in the box", r.outside_box))?;
        ensure(r.confirmed == r.zero_verdicts && r.confirmed > 0, || format!("{name}: nothing confirmed"))?;
        out.push(format!("{name} {}", r.confirmed));
    }
    Ok(format!("confirmed: {}", out.join(", ")))
}

fn c9_lagrangian() -> Outcome {
    let f = p13();
    let pieces = lib(lambda_skeleton(&f, 3, &q(1, 1)))?;
    let mut down = Vec::new();
    let mut up = Vec::new();
    for p in &pieces {
        let x = || p.base.as_point().map(|v| v.0[0].clone()).ok_or("base is not a point".to_string());
        match p.cone.rays() {
            [] => {}
            // the fibre is the negated ray, so b = 3 gives downward fibres
            [0] => down.push(x()?),
            [1] => up.push(x()?),
            r => return Err(format!("unexpected cone {r:?}")),
        }
    }
    down.sort();
    up.sort();
    ensure(down == (-3..=3).map(|k| q(k, 3)).collect::<Vec<_>>(), || format!("down fibres at {down:?}"))?;
    ensure(up == vec![q(-1, 1), q(0, 1), q(1, 1)], || format!("up fibres at {up:?}"))?;
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let data = concat!(env!("CARGO_MANIFEST_DIR"), "/data/p13.json");
    let mut svgs = Vec::new();
    for k in 0..2 {
        let path = dir.path().join(format!("run{k}.svg"));
        let args = ["ccc", "plot", "lagrangian", data, "--window", "3", "--box", "1", "-o", path.to_str().unwrap()];
        let (mut o, mut e) = (Vec::new(), Vec::new());
        let code = toric_ccc::cli::run_with(args, &mut o, &mut e);
        ensure(code == 0, || String::from_utf8_lossy(&o).into_owned())?;
        svgs.push(std::fs::read(&path).map_err(|e| e.to_string())?);
    }
    let golden = std::fs::read(concat!(env!("CARGO_MANIFEST_DIR"), "/tests/golden/p13_lagrangian.svg"))
        .map_err(|e| e.to_string())?;
    ensure(svgs[0] == svgs[1], || "two runs differ".into())?;
    ensure(svgs[0] == golden, || "output differs from the golden file".into())?;
    Ok(format!("{} pieces, svg {} bytes", pieces.len(), golden.len()))
}

fn random_ample(f: &StackyFan, rng: &mut StdRng) -> Result<Vec<BigInt>, String> {
    loop {
        let c: Vec<BigInt> = (0..f.rays().len()).map(|_| BigInt::from(rng.gen_range(-6..=6))).collect();
        if lib(is_q_ample(f, &c))? {
            return Ok(c);
        }
    }
}

fn bounds(p: &Polyhedron) -> Result<(Rational, Rational), String> {
    match lib(p.axis_bounds(0))? {
        (Some((lo, _)), Some((hi, _))) => Ok((lo, hi)),
        _ => Err("unbounded polytope".into()),
    }
}

fn c10_monoidality() -> Outcome {
    let mut rng = StdRng::seed_from_u64(20261014);
    for (name, f) in [("P1", p1()), ("P(1,3)", p13())] {
        for _ in 0..50 {
            let c = random_ample(&f, &mut rng)?;
            let d = random_ample(&f, &mut rng)?;
            let cd: Vec<BigInt> = c.iter().zip(&d).map(|(a, b)| a + b).collect();
            let pc = lib(ample_polytope(&f, &c))?;
            let pd = lib(ample_polytope(&f, &d))?;
            let pcd = lib(ample_polytope(&f, &cd))?;
            let sum = lib(minkowski_sum(&pc, &pd))?;
            ensure(pcd.same_set(&sum), || format!("{name}: c={c:?} d={d:?}"))?;
            // endpoints of intervals add
            let ((a0, a1), (b0, b1), (s0, s1)) = (bounds(&pc)?, bounds(&pd)?, bounds(&pcd)?);
            ensure(s0 == &a0 + &b0 && s1 == &a1 + &b1, || format!("{name}: endpoints c={c:?} d={d:?}"))?;
        }
    }
    Ok("100 pairs".into())
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("1 same-base bundle map", Duration::from_secs(1), c1_same_base_bundles),
        ("2 crepant bundle images and composite", Duration::from_secs(5), c2_crepant_bundles),
        ("3 discrepancy example bundle images", Duration::from_secs(1), c3_discrepancy_bundles),
        ("4 hom oracle equivalence", Duration::from_secs(30), c4_hom_oracle),
        ("5 poset embedding", Duration::from_secs(10), c5_poset_embedding),
        ("6 staircase sandwich and membership", Duration::from_secs(60), c6_sandwich),
        ("7 Koszul Euler counts", Duration::from_secs(60), c7_koszul),
        ("8 contractibility rasters", Duration::from_secs(120), c8_contractibility),
        ("9 Lagrangian skeleton figure", Duration::from_secs(10), c9_lagrangian),
        ("10 monoidality on ample bundles", Duration::from_secs(10), c10_monoidality),
    ];
    let mut failed = 0;
    for (name, budget, f) in criteria {
        let start = Instant::now();
        let outcome = f();
        let took = start.elapsed();
        let (tag, detail) = match outcome {
            Ok(d) if took <= budget => ("PASS", d),
            Ok(d) => ("FAIL", format!("{d}; over the {budget:?} budget")),
            Err(e) => ("FAIL", e),
        };
        failed += (tag == "FAIL") as usize;
        println!("{tag} criterion {name} ({:.2}s): {detail}", took.as_secs_f64());
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
