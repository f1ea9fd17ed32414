//! The nine release criteria, one PASS/FAIL line each.

use latres_core::abelian::{
    ab_cohomology_report, dual_ab_cohomology, shortcut, verify_cor_4_3_dual, verify_kamb_star, verify_prop_4_2_dual,
};
use latres_core::cohomology::{
    duality_check, is_flasque, tate, tate_complete, tate_minus_one_formula, tate_zero_formula, TateClass,
};
use latres_core::corpus;
use latres_core::linalg::Lattice;
use latres_core::linalg::Matrix;
use latres_core::module::{
    exact_at, kernel, permutation_basis_holds, permutation_module, split_extension, sublattice_module,
};
use latres_core::reductive::{
    compare_resolutions, flasque_resolution, flasque_resolution_with, pi1, pi1_check, verify_prop_3_4, verify_prop_3_9,
    verify_theorem_3_14, CoverGenerators,
};
use latres_core::schema::{canonical_json, parse_as, DatumDoc};
use latres_core::{Config, DMap, DModule, Error, FiniteGroup, Int, Subgroup};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::Command;
use std::time::{Duration, Instant};

type Check = std::result::Result<String, String>;

fn ensure(cond: bool, msg: impl Into<String>) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn ok<T>(r: latres_core::Result<T>, what: &str) -> std::result::Result<T, String> {
    r.map_err(|e| format!("{what}: {e}"))
}

fn cyclic_orders(v: &[i64]) -> TateClass {
    TateClass::from_cyclic_orders(&v.iter().map(|&x| Int::from(x)).collect::<Vec<_>>())
}

// Random lattices: sums of small permutation and sign lattices, conjugated by a
// unimodular matrix and sometimes cut down to a stable sublattice of finite index.

fn elementary(n: usize, i: usize, j: usize, c: i64) -> Matrix {
    let mut e = Matrix::identity(n);
    e[(i, j)] = Int::from(c);
    e
}

fn sign_like(g: &FiniteGroup, kernel: &Subgroup) -> DModule {
    let act = g
        .elements()
        .map(|x| Matrix::from_i64(&[vec![if kernel.contains(x) { 1 } else { -1 }]]))
        .collect();
    DModule::lattice(g, act).expect("character")
}

fn random_module(g: &FiniteGroup, rng: &mut ChaCha8Rng, cfg: &Config) -> DModule {
    let subs = g.subgroups(cfg).unwrap().all;
    let index2: Vec<&Subgroup> = subs.iter().filter(|h| 2 * h.order() == g.order()).collect();
    let mut parts: Vec<DModule> = Vec::new();
    let mut rank = 0;
    let target = rng.gen_range(1..=4);
    while rank < target {
        let pick = rng.gen_range(0..3);
        let m = match pick {
            0 => DModule::trivial(g, 1),
            1 if !index2.is_empty() => sign_like(g, index2[rng.gen_range(0..index2.len())]),
            _ => {
                let h = &subs[rng.gen_range(0..subs.len())];
                permutation_module(g, &[(h.clone(), 1)])
            }
        };
        if rank + m.ngens() <= 4 {
            rank += m.ngens();
            parts.push(m);
        } else if rank == 0 {
            continue;
        } else {
            break;
        }
    }
    let refs: Vec<&DModule> = parts.iter().collect();
    let (sum, _, _) = DModule::direct_sum(&refs);
    let n = sum.ngens();
    let (mut u, mut ui) = (Matrix::identity(n), Matrix::identity(n));
    if n > 1 {
        for _ in 0..6 {
            let i = rng.gen_range(0..n);
            let j = (i + rng.gen_range(1..n)) % n;
            let c = rng.gen_range(-2..=2);
            u = elementary(n, i, j, c).mul(&u);
            ui = ui.mul(&elementary(n, i, j, -c));
        }
    }
    let act = g.elements().map(|x| u.mul(sum.action(x)).mul(&ui)).collect();
    let m = DModule::lattice(g, act).expect("conjugate lattice");
    if rng.gen_bool(0.5) {
        let v: Vec<Int> = (0..n).map(|_| Int::from(rng.gen_range(-2..=2))).collect();
        let p = Int::from(rng.gen_range(2..=3));
        let mut gens: Vec<Vec<Int>> = g.elements().map(|x| m.act(x, &v)).collect();
        gens.extend((0..n).map(|i| {
            let mut e = vec![Int::ZERO; n];
            e[i] = p.clone();
            e
        }));
        let (sub, _) = sublattice_module(&m, &Lattice::from_vectors(n, &gens)).expect("stable sublattice");
        return sub;
    }
    m
}

fn oracle_equivalence() -> Check {
    let cfg = Config::default();
    let mut rng = ChaCha8Rng::seed_from_u64(20);
    let groups = [
        FiniteGroup::cyclic(2),
        FiniteGroup::cyclic(4),
        FiniteGroup::product(&FiniteGroup::cyclic(2), &FiniteGroup::cyclic(2)),
        FiniteGroup::s3(),
    ];
    let mut count = 0;
    for k in 0..50 {
        let g = &groups[k % groups.len()];
        let m = random_module(g, &mut rng, &cfg);
        for theta in ok(g.subgroups(&cfg), "subgroups")?.representatives() {
            let zero = ok(tate_zero_formula(theta, &m), "norm formula")?;
            let bar = ok(tate_complete(theta, &m, 0, &cfg), "bar route")?;
            ensure(zero == bar, format!("module {k}: Ĥ⁰ {zero} vs {bar}"))?;
            let minus = ok(tate_minus_one_formula(theta, &m), "norm-kernel formula")?;
            let d = ok(duality_check(&m, theta, &cfg), "duality")?;
            ensure(
                d.holds && d.minus_one == minus,
                format!("module {k}: Ĥ⁻¹ {minus} vs {}", d.one_of_dual),
            )?;
            let bar = ok(tate_complete(theta, &m, -1, &cfg), "bar route")?;
            ensure(minus == bar, format!("module {k}: Ĥ⁻¹ {minus} vs bar {bar}"))?;
        }
        count += 1;
    }
    Ok(format!("{count} random modules"))
}

fn shapiro_and_known_values() -> Check {
    let cfg = Config::default();
    for n in [2usize, 3, 4] {
        let g = FiniteGroup::cyclic(n);
        let z = DModule::trivial(&g, 1);
        let got: Vec<TateClass> = (0..=2)
            .map(|i| tate(&g.whole(), &z, i, &cfg))
            .collect::<Result<_, _>>()
            .unwrap();
        let c = TateClass::cyclic(n as i64);
        ensure(got == vec![c.clone(), TateClass::zero(), c], format!("Z/{n}: {got:?}"))?;
    }
    let mut cases = 0;
    for name in corpus::names_of("group") {
        let g = ok(corpus::group(name, &cfg), name)?;
        for theta in ok(g.subgroups(&cfg), "subgroups")?.representatives() {
            let induced = permutation_module(&g, &[(theta.clone(), 1)]);
            let (h, _) = g.subgroup_as_group(theta);
            let z = DModule::trivial(&h, 1);
            for i in -1..=2 {
                let a = ok(tate(&g.whole(), &induced, i, &cfg), "induced")?;
                let b = ok(tate(&h.whole(), &z, i, &cfg), "subgroup")?;
                ensure(
                    a == b,
                    format!("{name}, Θ = {:?}, degree {i}: {a} vs {b}", theta.elements()),
                )?;
                cases += 1;
            }
        }
    }
    Ok(format!("{cases} Shapiro cases"))
}

fn resolution_postconditions() -> Check {
    let cfg = Config::default();
    let data = ok(corpus::data(&cfg), "corpus")?;
    ensure(data.len() >= 10, "fewer than ten data")?;
    for (name, gd) in &data {
        ensure(gd.group().order() <= 6, format!("{name}: group too large"))?;
        let res = ok(flasque_resolution(gd, &cfg), name)?;
        ensure(
            ok(is_flasque(&res.fch, &cfg), name)?.holds,
            format!("{name}: Fch not flasque"),
        )?;
        ensure(
            ok(permutation_basis_holds(&res.rch, &cfg), name)?,
            format!("{name}: Rch not permutation"),
        )?;
        ensure(res.x0_to_r.is_injective(), format!("{name}: X₀ → Rch not injective"))?;
        ensure(exact_at(&res.x0_to_r, &res.rho), format!("{name}: not exact at Rch"))?;
        ensure(exact_at(&res.rho, &res.f_to_mu), format!("{name}: not exact at Fch"))?;
        ensure(res.f_to_mu.is_surjective(), format!("{name}: Fch → μ not surjective"))?;
    }
    Ok(format!("{} data", data.len()))
}

fn fundamental_groups() -> Check {
    let cfg = Config::default();
    let inv = |name: &str| -> std::result::Result<(usize, Vec<i64>), String> {
        let gd = ok(corpus::datum(name, &cfg), name)?;
        let pi = ok(pi1(&ok(flasque_resolution(&gd, &cfg), name)?), name)?;
        let a = pi.module.invariants();
        Ok((a.free_rank, a.torsion.iter().map(|d| d.to_i64().unwrap()).collect()))
    };
    let data = ok(corpus::data(&cfg), "corpus")?;
    for (name, gd) in &data {
        let res = ok(flasque_resolution(gd, &cfg), name)?;
        let pi = ok(pi1(&res), name)?;
        let c = ok(pi1_check(&res, &pi, &cfg), name)?;
        ensure(c.holds(), format!("{name}: {c:?}"))?;
        if gd.is_torus() {
            ensure(
                pi.module.invariants().free_rank == gd.rank(),
                format!("{name}: π₁ is not X∨"),
            )?;
        }
    }
    for (name, want) in [
        ("pgl2", (0, vec![2])),
        ("pgl3", (0, vec![3])),
        ("gl2", (1, vec![])),
        ("gl3", (1, vec![])),
        ("sl2", (0, vec![])),
        ("sl3", (0, vec![])),
    ] {
        ensure(inv(name)? == want, format!("{name}: {:?}", inv(name)?))?;
    }
    Ok(format!("{} data against the cocharacter oracle", data.len()))
}

fn exact_pi1_sequences() -> Check {
    let cfg = Config::default();
    for (name, n) in [
        ("seq.gln-pgln", 2),
        ("seq.gl3-pgl3", 3),
        ("seq.sl2-gl2-gm", 0),
        ("seq.sl2xpgl2", 0),
    ] {
        let seq = ok(corpus::sequence(name, &cfg), name)?;
        let r = ok(verify_theorem_3_14(&seq, &cfg), name)?;
        ensure(r.direct.holds() && r.factored.holds(), format!("{name}: a route fails"))?;
        if n > 0 {
            let k = &r.kappa_star;
            ensure(
                k.rows() == 1 && k.cols() == 1 && k[(0, 0)].abs() == Int::from(n),
                format!("{name}: κ_* = {k:?}"),
            )?;
        }
    }
    Ok("GL2, GL3, SL2 ⊂ GL2 and a product".to_string())
}

fn resolution_comparisons() -> Check {
    let cfg = Config::default();
    for (name, gd) in ok(corpus::data(&cfg), "corpus")? {
        let res = ok(flasque_resolution(&gd, &cfg), name)?;
        ok(verify_prop_3_4(&res, &cfg), name)?;
        ok(verify_prop_3_9(&res, &cfg), name)?;
    }
    for name in ["pgl2", "gl2", "pgl2.z2", "gl2.z2"] {
        let gd = ok(corpus::datum(name, &cfg), name)?;
        let g = gd.group();
        let a = ok(flasque_resolution(&gd, &cfg), name)?;
        let b = ok(flasque_resolution_with(&gd, CoverGenerators::Redundant, &cfg), name)?;
        let c = ok(a.stabilized(&permutation_module(g, &[(g.trivial_subgroup(), 1)])), name)?;
        for other in [&b, &c] {
            let cmp = ok(compare_resolutions(&a, other, &cfg), name)?;
            ensure(
                cmp.forward_iso && cmp.inverse && cmp.holds(),
                format!("{name}: {cmp:?}"),
            )?;
        }
    }
    Ok("roof and torsion sequences on the corpus, explicit isos for PGL2 and GL2".to_string())
}

fn dual_theory() -> Check {
    let cfg = Config::default();
    let mut shortcuts = 0;
    for (name, gd) in ok(corpus::data(&cfg), "corpus")? {
        for i in -1..=1 {
            if let Some(s) = ok(shortcut(&gd, i, &cfg), name)? {
                let h = ok(dual_ab_cohomology(&gd, i, &cfg), name)?;
                ensure(h == s, format!("{name}, degree {i}: {h} vs {s}"))?;
                shortcuts += 1;
            }
        }
        ensure(
            ok(ab_cohomology_report(&gd, &[-1, 0, 1, 2], &cfg), name)?.holds(),
            format!("{name}: report"),
        )?;
        ok(verify_kamb_star(&gd, &cfg), name)?;
        let res = ok(flasque_resolution(&gd, &cfg), name)?;
        ok(verify_prop_4_2_dual(&res, &cfg), name)?;
        ok(verify_cor_4_3_dual(&res, &cfg), name)?;
    }
    for (name, ker, coker) in [
        ("pgl2", 0, vec![2]),
        ("gl2", 1, vec![]),
        ("pgl2.z2", 0, vec![2]),
        ("gl2.z2", 1, vec![]),
    ] {
        let gd = ok(corpus::datum(name, &cfg), name)?;
        let r = ok(
            verify_cor_4_3_dual(&ok(flasque_resolution(&gd, &cfg), name)?, &cfg),
            name,
        )?;
        let t: Vec<i64> = r.cokernel.torsion.iter().map(|d| d.to_i64().unwrap()).collect();
        ensure(
            r.kernel.free_rank == ker && r.kernel.torsion.is_empty() && r.cokernel.free_rank == 0 && t == coker,
            format!("{name}: ker {:?}, coker {:?}", r.kernel, r.cokernel),
        )?;
    }
    let pgl = ok(corpus::datum("pgl2.z2", &cfg), "pgl2.z2")?;
    ensure(
        ok(dual_ab_cohomology(&pgl, 0, &cfg), "pgl2.z2")? == cyclic_orders(&[2]),
        "PGL2 over Z/2: ℍ⁰ ≠ Z/2",
    )?;
    Ok(format!("{shortcuts} shortcut comparisons"))
}

fn negative_controls() -> Check {
    let cfg = Config::default();
    let g = FiniteGroup::cyclic(2);
    let zg = permutation_module(&g, &[(g.trivial_subgroup(), 1)]);
    let z = DModule::trivial(&g, 1);
    let aug = ok(DMap::new(&zg, &z, Matrix::from_i64(&[vec![1, 1]])), "augmentation")?;
    let k = kernel(&aug);
    ensure(
        ok(split_extension(&k.inclusion, &aug), "split")?.is_none(),
        "augmentation sequence splits",
    )?;
    let sign = ok(corpus::module("sign", &cfg), "sign")?;
    let f = ok(is_flasque(&sign, &cfg), "flasque")?;
    ensure(!f.holds, "sign lattice accepted as flasque")?;
    ensure(
        f.failures().iter().any(|w| w.class == cyclic_orders(&[2])),
        "no Ĥ⁻¹ = Z/2 witness",
    )?;
    let bad: DatumDoc = ok(
        parse_as(
            r#"{"X_rank": 1, "roots": [[1], [-1]], "coroots": [[1], [-1]]}"#,
            "datum",
        ),
        "parse",
    )?;
    ensure(
        matches!(bad.build(&corpus::Corpus, &cfg), Err(Error::AxiomViolation { .. })),
        "pairing ≠ 2 accepted",
    )?;
    Ok("split extension, flasque witness, root pairing".to_string())
}

fn suite_report() -> latres_core::Result<String> {
    let cfg = Config::default();
    let mut out = Vec::new();
    for (name, gd) in corpus::data(&cfg)? {
        let res = flasque_resolution(&gd, &cfg)?;
        let pi = pi1(&res)?;
        out.push(json!({
            "name": name,
            "record": res.view(),
            "pi1": pi.module.invariants(),
            "check": pi1_check(&res, &pi, &cfg)?,
            "abelian": ab_cohomology_report(&gd, &[-1, 0, 1, 2], &cfg)?,
            "roof": verify_prop_3_4(&res, &cfg)?,
        }));
    }
    for (name, seq) in corpus::sequences(&cfg)? {
        out.push(json!({"name": name, "theorem": verify_theorem_3_14(&seq, &cfg)?}));
    }
    canonical_json(&out)
}

fn cli_reports() -> std::result::Result<Vec<Vec<u8>>, String> {
    let runs: &[&[&str]] = &[
        &["--report", "json", "pi1", "--datum", "pgl2"],
        &[
            "--report",
            "json",
            "verify",
            "--prop",
            "3.14",
            "--sequence",
            "seq.gln-pgln",
        ],
        &["--report", "json", "abcoh", "--datum", "gl2.z2"],
        &["--report", "json", "resolve-group", "--datum", "norm-one.z3"],
    ];
    let mut out = Vec::new();
    for args in runs {
        let o = Command::new(env!("CARGO_BIN_EXE_latres"))
            .args(*args)
            .output()
            .map_err(|e| e.to_string())?;
        ensure(o.status.success(), format!("latres {args:?} failed"))?;
        out.push(o.stdout);
    }
    Ok(out)
}

fn determinism() -> Check {
    let a = ok(suite_report(), "first run")?;
    let b = ok(suite_report(), "second run")?;
    ensure(a == b, "library reports differ between runs")?;
    ensure(cli_reports()? == cli_reports()?, "CLI reports differ between runs")?;
    Ok(format!("{} bytes of report, identical", a.len()))
}

/// Name, check and time limit in seconds.
type Criterion = (&'static str, fn() -> Check, Option<u64>);

fn main() {
    let criteria: [Criterion; 9] = [
        ("Tate oracle equivalence", oracle_equivalence, Some(10)),
        ("Shapiro and known values", shapiro_and_known_values, Some(5)),
        ("resolution postconditions", resolution_postconditions, Some(60)),
        ("π₁ cross-check", fundamental_groups, Some(60)),
        ("exact π₁ sequences", exact_pi1_sequences, Some(60)),
        (
            "roof, torsion sequence and comparison",
            resolution_comparisons,
            Some(60),
        ),
        ("dual abelian cohomology", dual_theory, Some(60)),
        ("negative controls", negative_controls, None),
        ("determinism", determinism, None),
    ];
    let mut failed = Vec::new();
    for (k, (name, f, limit)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let r = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| Err("panicked".to_string()));
        let t = start.elapsed();
        let r = match (r, limit) {
            (Ok(_), Some(s)) if t > Duration::from_secs(*s) => Err(format!("took {t:.1?}, limit {s}s")),
            (r, _) => r,
        };
        match r {
            Ok(detail) => println!("PASS {} {name}: {detail} ({t:.2?})", k + 1),
            Err(why) => {
                println!("FAIL {} {name}: {why} ({t:.2?})", k + 1);
                failed.push(k + 1);
            }
        }
    }
    if !failed.is_empty() {
        eprintln!("failed criteria: {failed:?}");
        std::process::exit(1);
    }
}
