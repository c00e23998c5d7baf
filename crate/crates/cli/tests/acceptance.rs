//! The thirteen acceptance criteria, one pass/fail line each.
//!
//! Run with `cargo test -p nilgrowth-cli --test acceptance`.

#[path = "../../core/tests/support/dynkin.rs"]
mod dynkin;

use std::path::PathBuf;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use nilgrowth::hall::{build_hall_basis, witt_count};
use nilgrowth::nilgroup::{heisenberg_matrix, privileged_change_profile, Heisenberg};
use nilgrowth::scalar::{int, rat, rat_to_string, Rat};
use nilgrowth::setalg::{
    enumerate_nilbox, enumerate_progression, inverse_set, progression_tuples, FiniteSet,
    FreeProgression, Group, NilboxSpec, ProgressionSpec,
};
use nilgrowth::verify::{
    approx_witness, check_golden, closure_suite, completion_check, decompose_suite,
    dilation_control, doubling_constant, freiman_hom_check, freiman_invariance_check, growth_suite,
    hall_petresco_check, lazard_check, mutual_control_suite, pow_polynomiality_check, CoverMode,
    GoldenStatus,
};
use nilgrowth::{GroupElement, LieAlgebra, LieElement, Limits, NilGroup};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn fail(e: impl std::fmt::Display) -> String {
    e.to_string()
}

fn golden_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../golden")
}

fn golden(name: &str, value: &impl serde::Serialize) -> Result<&'static str, String> {
    match check_golden(&golden_dir(), name, value).map_err(fail)? {
        GoldenStatus::Recorded => Ok("recorded"),
        GoldenStatus::Matched => Ok("matched"),
        GoldenStatus::Mismatch { stored } => Err(format!("golden {name} differs: {stored}")),
    }
}

fn lim() -> Limits {
    Limits::default()
}

fn random_rat(rng: &mut impl Rng) -> Rat {
    rat(rng.gen_range(-4..=4), rng.gen_range(1..=4))
}

fn random_log(algebra: &LieAlgebra, rng: &mut impl Rng) -> LieElement {
    let dense: Vec<Rat> = (0..algebra.dim()).map(|_| random_rat(rng)).collect();
    algebra.from_dense(&dense)
}

fn random_elem(group: &NilGroup, rng: &mut impl Rng) -> GroupElement {
    group.exp(&random_log(group.algebra(), rng)).unwrap()
}

fn hall_basis() -> Check {
    let b = build_hall_basis(3, 3, &lim()).map_err(fail)?;
    let profile: Vec<usize> = (1..=3).map(|r| b.order_range(r).len()).collect();
    ensure(b.len() == 14, format!("t = {}", b.len()))?;
    ensure(profile == [3, 3, 8], format!("profile {profile:?}"))?;
    let wide = lim().with_max_basis(2000);
    for k in 1..=4 {
        let b = build_hall_basis(k, 6, &wide).map_err(fail)?;
        for r in 1..=6 {
            let want = witt_count(k as u64, r as u32).map_err(fail)?;
            ensure(
                b.order_range(r).len() as u128 == want,
                format!("k={k} r={r}: {} vs {want}", b.order_range(r).len()),
            )?;
        }
    }
    Ok("t = 14, profile (3,3,8), Witt counts for k <= 4, r <= 6".into())
}

fn bch() -> Check {
    let g = NilGroup::new(2, 4, &lim()).map_err(fail)?;
    let a = g.algebra();
    let (x, y) = (a.generator(0), a.generator(1));
    let z = g
        .mul(&g.exp(&x).map_err(fail)?, &g.exp(&y).map_err(fail)?)
        .map_err(fail)?;
    ensure(
        a.order_component(z.log(), 1) == x.try_add(&y).unwrap(),
        "order 1",
    )?;
    let xy = a.bracket(&x, &y).map_err(fail)?;
    ensure(
        a.order_component(z.log(), 2) == xy.scale(&rat(1, 2)),
        "order 2 is not 1/2 [X,Y]",
    )?;
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for (k, s) in [(2, 3), (2, 4), (3, 3)] {
        let g = NilGroup::new(k, s, &lim()).map_err(fail)?;
        let a = g.algebra();
        for _ in 0..5 {
            let (x, y) = (random_log(a, &mut rng), random_log(a, &mut rng));
            let z = g
                .mul(&g.exp(&x).unwrap(), &g.exp(&y).unwrap())
                .map_err(fail)?;
            ensure(
                *z.log() == dynkin::dynkin(a, &x, &y),
                format!("Dynkin series differs in ({k},{s})"),
            )?;
        }
    }
    for (k, s) in [(2, 2), (2, 3), (3, 2), (3, 3)] {
        let g = NilGroup::new(k, s, &lim()).map_err(fail)?;
        for _ in 0..200 {
            let (x, y, z) = (
                random_elem(&g, &mut rng),
                random_elem(&g, &mut rng),
                random_elem(&g, &mut rng),
            );
            let left = g.mul(&g.mul(&x, &y).unwrap(), &z).unwrap();
            let right = g.mul(&x, &g.mul(&y, &z).unwrap()).unwrap();
            ensure(left == right, format!("associativity fails in ({k},{s})"))?;
        }
    }
    Ok("coefficients 1, 1, 1/2; Dynkin agreement; 800 associative triples".into())
}

fn coordinates() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for k in 2..=3 {
        for s in 1..=3 {
            let g = NilGroup::new(k, s, &lim()).map_err(fail)?;
            for _ in 0..100 {
                let x = random_elem(&g, &mut rng);
                let gp = g.to_group_coords(&x);
                ensure(
                    g.from_group_coords(&gp).map_err(fail)? == x,
                    "group coordinates",
                )?;
                let t2 = g.to_type2_coords(&x);
                ensure(
                    g.from_type2_coords(&t2).map_err(fail)? == x,
                    "type-II coordinates",
                )?;
                let alg = g.to_alg_coords(&x);
                ensure(
                    g.from_alg_coords(&alg).map_err(fail)? == x,
                    "algebra coordinates",
                )?;
            }
        }
    }
    for (k, s) in [(2, 2), (2, 3), (3, 2)] {
        let p = privileged_change_profile(k, s, &lim()).map_err(fail)?;
        ensure(
            p.holds(),
            format!("({k},{s}): {}", p.violation().unwrap_or_default()),
        )?;
    }
    Ok("exact round trips for k <= 3, s <= 3; privileged profiles hold".into())
}

fn dilation() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for (k, s) in [(2, 3), (3, 3)] {
        let g = NilGroup::new(k, s, &lim()).map_err(fail)?;
        for _ in 0..50 {
            let (x, y) = (random_elem(&g, &mut rng), random_elem(&g, &mut rng));
            let r = random_rat(&mut rng);
            let lhs = g.dilate(&g.mul(&x, &y).unwrap(), &r);
            let rhs = g.mul(&g.dilate(&x, &r), &g.dilate(&y, &r)).unwrap();
            ensure(
                lhs == rhs,
                format!("dilation is not multiplicative in ({k},{s})"),
            )?;
        }
    }
    Ok("100 random pairs".into())
}

/// `P ∪ P⁻¹` mapped into integer Heisenberg matrices.
fn heisenberg_set(lengths: [u64; 2]) -> Result<(FiniteSet<[i64; 3]>, FiniteSet<[i64; 3]>), String> {
    let g = NilGroup::new(2, 2, &lim()).map_err(fail)?;
    let spec = ProgressionSpec::new(vec![g.generator(0), g.generator(1)], lengths.to_vec());
    let tuples = progression_tuples(&g, g.algebra().basis(), &spec, &lim()).map_err(fail)?;
    let mut p = Vec::with_capacity(tuples.len());
    for (l, x) in &tuples {
        let m = heisenberg_matrix(&g, x).map_err(fail)?;
        let ints: Vec<i64> = [&m[0][1], &m[1][2], &m[0][2]]
            .iter()
            .map(|q| {
                assert!(q.is_integer());
                q.to_integer().try_into().unwrap()
            })
            .collect();
        let unitriangular =
            (0..3).all(|i| m[i][i] == int(1)) && (0..3).all(|i| (0..i).all(|j| m[i][j] == int(0)));
        // basis element 3 is [X2,X1], so l_12 = -l_3
        let expected = [l[0], l[1], l[0] * l[1] - l[2]];
        ensure(
            unitriangular && ints == expected,
            format!("exponents {l:?} give matrix entries {ints:?}"),
        )?;
        p.push([ints[0], ints[1], ints[2]]);
    }
    let p = FiniteSet::from_vec(p);
    let a = p.union(&inverse_set(&Heisenberg, &p));
    Ok((p, a))
}

fn heisenberg() -> Check {
    let h = Heisenberg;
    let mut ks = Vec::new();
    let mut notes = Vec::new();
    for lengths in [[1, 1], [2, 3], [4, 4]] {
        let (p, a) = heisenberg_set(lengths)?;
        let (l1, l2) = (lengths[0] as i64, lengths[1] as i64);
        let bound = l1 * l2;
        ensure(
            a.iter().all(|e| e[2].abs() <= 2 * bound),
            format!("L={lengths:?}: |z| exceeds 2 L1 L2"),
        )?;
        for x in -l1..=l1 {
            for y in -l2..=l2 {
                for z in -bound..=bound {
                    ensure(
                        a.contains(&[x, y, z]),
                        format!("L={lengths:?}: box point ({x},{y},{z}) missing"),
                    )?;
                }
            }
        }
        let w = approx_witness(&h, &a, CoverMode::Greedy, &lim()).map_err(fail)?;
        ensure(w.certified, format!("L={lengths:?}: witness not certified"))?;
        ks.push(w.k);
        notes.push(format!(
            "L={lengths:?} |P|={} |A|={} K={}",
            p.len(),
            a.len(),
            w.k
        ));
        if lengths == [2, 3] {
            let d = doubling_constant(&h, &a, &lim()).map_err(fail)?;
            let status = golden(
                "heisenberg_doubling_2_3",
                &serde_json::json!({ "lengths": lengths, "doubling": rat_to_string(&d) }),
            )?;
            notes.push(format!("doubling golden {status}"));
        }
    }
    let agree = ks.windows(2).all(|w| w[0] == w[1]);
    if agree {
        let status = golden("heisenberg_k", &serde_json::json!({ "k": ks[0] }))?;
        notes.push(format!("K golden {status}"));
        Ok(notes.join("; "))
    } else {
        Err(format!(
            "matrices and box containment hold, but greedy K differs across L: {}",
            notes.join("; ")
        ))
    }
}

fn growth() -> Check {
    let (_, a) = heisenberg_set([1, 1])?;
    let w = approx_witness(&Heisenberg, &a, CoverMode::Greedy, &lim()).map_err(fail)?;
    ensure(w.certified, "witness not certified")?;
    let r = growth_suite(&Heisenberg, &a, &w, 4, &lim()).map_err(fail)?;
    let cards: Vec<usize> = r.rows.iter().map(|row| row.card).collect();
    ensure(r.holds, format!("growth fails: {r:?}"))?;
    // |A·A| = |A^2| is the second row
    let doubling = rat(cards[1] as i64, a.len() as i64);
    let status = golden(
        "heisenberg_doubling_1_1",
        &serde_json::json!({ "lengths": [1, 1], "doubling": rat_to_string(&doubling) }),
    )?;
    Ok(format!(
        "K = {}, |A^n| = {cards:?}, doubling {} golden {status}",
        w.k,
        rat_to_string(&doubling)
    ))
}

fn closure() -> Check {
    let a = closure_suite(2, 2, 20, 4, Some(2), 7, &lim()).map_err(fail)?;
    ensure(
        a.holds,
        format!(
            "n_(2,2): {:?}",
            a.instances
                .iter()
                .find(|i| !i.bracket_closed || i.sumset_compatible == Some(false))
        ),
    )?;
    let b = closure_suite(2, 3, 10, 3, Some(2), 8, &lim()).map_err(fail)?;
    ensure(
        b.holds,
        format!(
            "n_(2,3): {:?}",
            b.instances
                .iter()
                .find(|i| !i.bracket_closed || i.sumset_compatible == Some(false))
        ),
    )?;
    Ok("20 sets in n_(2,2), 10 in n_(2,3), with m = 2".into())
}

fn decompose() -> Check {
    let r = decompose_suite(&[2, 3, 4], &lim()).map_err(fail)?;
    ensure(r.rows.len() == 25, "row count")?;
    for row in &r.rows {
        let sum: u64 = row.terms.iter().map(|v| v.iter().product::<u64>()).sum();
        ensure(
            sum == row.m && row.terms.len() <= 4,
            format!("m = {}: {:?}", row.m, row.terms),
        )?;
        ensure(
            row.terms
                .iter()
                .all(|v| v[0] <= 2 && v[1] <= 3 && v[2] <= 4 && v.iter().all(|x| *x >= 1)),
            format!("m = {}: factor out of range", row.m),
        )?;
    }
    let most = r.rows.iter().map(|row| row.terms.len()).max().unwrap_or(0);
    Ok(format!("0..=24 decomposed, at most {most} products"))
}

fn completion() -> Check {
    let a = LieAlgebra::new(2, 2, &lim()).map_err(fail)?;
    let r =
        completion_check(&a, &[a.generator(0), a.generator(1)], &[1, 1], &lim()).map_err(fail)?;
    ensure(r.holds, format!("{r:?}"))?;
    Ok(format!(
        "|p̄| = {}, q lengths {:?}, q ⊆ {}p̄ by {}",
        r.completion_size, r.q_lengths, r.q_factor, r.multiple_method
    ))
}

fn identities() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    for k in [2, 3] {
        let g = NilGroup::new(k, 2, &lim()).map_err(fail)?;
        for _ in 0..100 {
            let (x, y) = (random_elem(&g, &mut rng), random_elem(&g, &mut rng));
            ensure(
                lazard_check(&g, &x, &y).map_err(fail)?,
                format!("Lazard fails for k={k}"),
            )?;
        }
        for n in 2..=5 {
            for _ in 0..10 {
                let (x, y) = (random_elem(&g, &mut rng), random_elem(&g, &mut rng));
                ensure(
                    hall_petresco_check(&g, &x, &y, n).map_err(fail)?,
                    format!("Hall-Petresco fails for k={k}, n={n}"),
                )?;
            }
        }
    }
    let probes = [rat(1, 2), rat(-7, 3), rat(5, 1), rat(11, 4)];
    for (k, s) in [(2, 2), (2, 3), (3, 3)] {
        let g = NilGroup::new(k, s, &lim()).map_err(fail)?;
        for _ in 0..10 {
            let x = random_elem(&g, &mut rng);
            ensure(
                pow_polynomiality_check(&g, &x, &probes),
                format!("power is not polynomial in ({k},{s})"),
            )?;
        }
    }
    Ok("Lazard on 200 pairs, Hall-Petresco n = 2..5, power interpolation".into())
}

fn inclusion() -> Check {
    let out = Command::new(env!("CARGO_BIN_EXE_nilgrowth"))
        .args(["verify", "inclusion", "--k", "2", "--s", "2", "--L", "2,2"])
        .output()
        .map_err(fail)?;
    ensure(
        out.status.code() == Some(0),
        format!(
            "exit code {:?}: {}",
            out.status.code(),
            String::from_utf8_lossy(&out.stderr)
        ),
    )?;
    let v: Value = serde_json::from_slice(&out.stdout).map_err(fail)?;
    ensure(v["holds"] == true, "inclusions do not all hold")?;
    let passing = v["inclusions"]
        .as_array()
        .map(|a| a.iter().filter(|i| i["holds"] == true).count())
        .unwrap_or(0);
    ensure(passing == 5, format!("{passing} of 5 inclusions hold"))?;
    let constants = v["constants"].clone();
    let status = golden("inclusion_2_2_L2_2", &constants)?;
    Ok(format!("constants {constants}, golden {status}"))
}

/// `∏_j (2⌊(λL)^{χ(j)}/Q⌋ + 1)` from the Hall weights.
fn count_formula(algebra: &LieAlgebra, lengths: &[u64], q: u64, lambda: &Rat) -> u128 {
    algebra
        .basis()
        .elements()
        .iter()
        .map(|e| {
            let mut m = int(1);
            for (l, chi) in lengths.iter().zip(e.weight.entries()) {
                for _ in 0..*chi {
                    m = m * (lambda * int(*l as i64));
                }
            }
            let b: u128 = (m / int(q as i64)).floor().to_integer().try_into().unwrap();
            2 * b + 1
        })
        .product()
}

fn mutual() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let lambdas = [int(1), rat(1, 2), rat(2, 3), rat(3, 2)];
    let mut draws = 0;
    while draws < 10 {
        let (k, s) = [(2, 2), (2, 3), (3, 2)][rng.gen_range(0..3)];
        let lengths: Vec<u64> = (0..k).map(|_| rng.gen_range(1..=3)).collect();
        let q = rng.gen_range(1..=3);
        let lambda = lambdas[rng.gen_range(0..lambdas.len())].clone();
        let g = NilGroup::new(k, s, &lim()).map_err(fail)?;
        let a = g.algebra();
        let want = count_formula(a, &lengths, q, &lambda);
        if want > 100_000 {
            continue;
        }
        draws += 1;
        let spec = NilboxSpec::free(a, lengths.clone())
            .with_q(q)
            .with_rho(lambda.clone());
        let nilbox = enumerate_nilbox(a, a.basis(), &spec, &lim())
            .map_err(fail)?
            .len();
        let prog = FreeProgression::new(&g, &lengths, q, &lambda)
            .map_err(fail)?
            .lattice_points(&lim())
            .map_err(fail)?
            .len();
        ensure(
            nilbox as u128 == want && prog as u128 == want,
            format!("({k},{s}) L={lengths:?} Q={q}: formula {want}, nilbox {nilbox}, progression {prog}"),
        )?;
    }
    let r = mutual_control_suite(2, 2, &[4, 4], &rat(1, 2), 1, 2, &lim()).map_err(fail)?;
    ensure(r.holds, format!("{r:?}"))?;
    let d = dilation_control(2, 2, &[2, 2], 2, &lim()).map_err(fail)?;
    ensure(d.control.certified, format!("{d:?}"))?;
    Ok(format!(
        "10 draws; ratio {} >= {}; gamma {} / {}; M=2 control {}",
        r.ratio,
        r.ratio_bound,
        r.nilbox_control.gamma,
        r.progression_control.gamma,
        d.control.gamma
    ))
}

fn freiman() -> Check {
    let h = Heisenberg;
    let g = NilGroup::new(2, 2, &lim()).map_err(fail)?;
    let spec = ProgressionSpec::new(vec![h.u1(), h.u2()], vec![1, 1]);
    let p = enumerate_progression(&h, g.algebra().basis(), &spec, &lim()).map_err(fail)?;
    let id = freiman_hom_check(&h, &h, &p, |x| Some(*x), 3, &lim()).map_err(fail)?;
    ensure(id.holds, "identity rejected")?;
    // (x, y, z) -> (2x, y, 2z) is an automorphism
    let hom = freiman_hom_check(&h, &h, &p, |x| Some([2 * x[0], x[1], 2 * x[2]]), 3, &lim())
        .map_err(fail)?;
    ensure(hom.holds, "homomorphism rejected")?;
    let moved = h.u1();
    let bad = freiman_hom_check(
        &h,
        &h,
        &p,
        |x| Some(if *x == moved { [1, 0, 1] } else { *x }),
        3,
        &lim(),
    )
    .map_err(fail)?;
    let w = bad.violation.ok_or("perturbed map accepted")?;
    let word = |f: &dyn Fn(&[i64; 3]) -> [i64; 3]| {
        w.tuple
            .iter()
            .zip(&w.signs)
            .fold(h.identity(), |acc, (a, e)| {
                h.mul(&acc, &h.pow_int(&f(a), *e as i64))
            })
    };
    ensure(word(&|a| *a) == h.identity(), "witness is not a relation")?;
    ensure(
        word(&|a| if *a == moved { [1, 0, 1] } else { *a }) != h.identity(),
        "witness image is trivial",
    )?;

    let two = int(2);
    let inv = freiman_invariance_check(&g, &[2, 2], |x| g.dilate(x, &two), &lim()).map_err(fail)?;
    ensure(inv.holds, format!("dilation instance: {inv:?}"))?;
    let small =
        freiman_invariance_check(&g, &[1, 1], |x| g.dilate(x, &two), &lim()).map_err(fail)?;
    ensure(
        !small.proviso_holds && small.proviso_failure.is_some(),
        "proviso failure at L=(1,1) not reported",
    )?;
    Ok(format!(
        "witness signs {:?}; L=(2,2) invariant over {} tuples; L=(1,1): {}",
        w.signs,
        inv.tuples_checked,
        small.proviso_failure.unwrap()
    ))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Check, u64); 13] = [
        ("Hall basis", hall_basis, 1),
        ("BCH correctness", bch, 60),
        ("coordinates", coordinates, 60),
        ("dilation automorphism", dilation, 60),
        ("Heisenberg example", heisenberg, 300),
        ("growth", growth, 300),
        ("nilcompletion closure", closure, 300),
        ("integer decomposition", decompose, 1),
        ("completed progression", completion, 300),
        ("Lazard and Hall-Petresco", identities, 60),
        ("inclusion family", inclusion, 600),
        ("mutual control", mutual, 300),
        ("Freiman homomorphisms", freiman, 300),
    ];
    let mut failures = 0;
    for (n, (name, check, budget)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = std::panic::catch_unwind(check).unwrap_or_else(|_| Err("panicked".into()));
        let elapsed = start.elapsed();
        let result = match result {
            Ok(d) if elapsed > Duration::from_secs(*budget) => {
                Err(format!("over the {budget}s budget; {d}"))
            }
            r => r,
        };
        let (verdict, detail) = match &result {
            Ok(d) => ("PASS", d),
            Err(d) => ("FAIL", d),
        };
        if result.is_err() {
            failures += 1;
        }
        println!(
            "criterion {:>2} {:<26} {} ({:.1}s) {}",
            n + 1,
            name,
            verdict,
            elapsed.as_secs_f64(),
            detail
        );
    }
    println!("{} of 13 criteria passed", 13 - failures);
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
