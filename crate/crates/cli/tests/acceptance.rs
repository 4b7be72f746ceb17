//! Acceptance criteria A1–A8. Prints one line per criterion and exits
//! nonzero if any fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;
use std::process::Command;
use std::time::Instant;

use num_traits::Zero;
use pncalc_core::calculus::*;
use pncalc_core::expr::{int, parse_poly, Chart, Poly, Rational};
use pncalc_core::groupoid::*;
use pncalc_core::liealg::*;
use pncalc_core::liegroup::{GroupLaw, PolyGroup};
use pncalc_core::oracle::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = std::result::Result<String, String>;
type Criterion = fn() -> Outcome;

fn ensure(cond: bool, msg: impl Into<String>) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn main() {
    let criteria: [(&str, &str, Criterion); 8] = [
        ("A1", "Nijenhuis torsion correctness", a1),
        ("A2", "Schouten normalization", a2),
        ("A3", "trivial groupoid end-to-end", a3),
        ("A4", "oracle cross-validation", a4),
        ("A5", "algebraic and group-level verdicts agree", a5),
        ("A6", "right-invariant bracket morphism", a6),
        ("A7", "groupoid axioms", a7),
        ("A8", "CLI determinism and exit codes", a8),
    ];
    let mut failed = 0;
    for (id, title, f) in criteria {
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let secs = start.elapsed().as_secs_f64();
        match result {
            Ok(detail) => println!("{id} PASS  {title}: {detail} ({secs:.1}s)"),
            Err(why) => {
                failed += 1;
                println!("{id} FAIL  {title}: {why} ({secs:.1}s)");
            }
        }
    }
    println!("acceptance: {} of 8 criteria pass", 8 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}

fn tolerance() -> Rational {
    Rational::new(1.into(), 1_000_000.into())
}

fn plan() -> SamplePlan {
    let p = SamplePlan::with_seed(42);
    assert_eq!(p.count, 20);
    assert_eq!(p.tolerance, tolerance());
    p
}

fn a1() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(101);
    for dim in 2..=4 {
        let c = Chart::numbered("x", dim).unwrap();
        ensure(nijenhuis_torsion(&EndoField::identity(&c)).is_zero(), format!("τ(I) ≠ 0 in dim {dim}"))?;
        for _ in 0..3 {
            let n = EndoField::from_fn(&c, |_, _| Poly::constant(&c, int(rng.gen_range(-4..=4))));
            ensure(nijenhuis_torsion(&n).is_zero(), format!("τ(constant) ≠ 0 in dim {dim}"))?;
        }
    }
    let plan = plan();
    let mut worst = 0f64;
    for round in 0..10 {
        let c = Chart::numbered("x", 2 + round % 3).unwrap();
        let n = random_endo(&mut rng, &c, 2);
        let tau = nijenhuis_torsion(&n);
        let out = randomized_identity_check(&tau, &*recipe_nijenhuis_torsion(&n, &plan), &plan);
        ensure(out.passed && out.samples == 20, format!("round {round}: {out:?}"))?;
        worst = worst.max(out.max_deviation_f64());
    }
    Ok(format!("exact zeros in dims 2-4; 10 random fields × 20 points, max deviation {worst:.1e}"))
}

/// Jacobi by expanding `[[eᵢ,eⱼ],eₖ]` with vector brackets.
fn brute_jacobi(t: &StructureTable) -> bool {
    let n = t.dim();
    let br = |v: &[Rational], w: &[Rational]| -> Vec<Rational> {
        (0..n)
            .map(|k| {
                let mut s = Rational::zero();
                for i in 0..n {
                    for j in 0..n {
                        s += &v[i] * &w[j] * t.get(k, i, j);
                    }
                }
                s
            })
            .collect()
    };
    let e = |i: usize| -> Vec<Rational> { (0..n).map(|k| if k == i { int(1) } else { int(0) }).collect() };
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let a = br(&br(&e(i), &e(j)), &e(k));
                let b = br(&br(&e(j), &e(k)), &e(i));
                let c = br(&br(&e(k), &e(i)), &e(j));
                if (0..n).any(|m| !(&a[m] + &b[m] + &c[m]).is_zero()) {
                    return false;
                }
            }
        }
    }
    true
}

fn random_table(rng: &mut ChaCha8Rng) -> StructureTable {
    let dim = rng.gen_range(2..=4);
    let count = rng.gen_range(1..=3);
    let entries: Vec<_> = (0..count)
        .map(|_| {
            let i = rng.gen_range(0..dim);
            let j = (i + rng.gen_range(1..dim)) % dim;
            let mut c = rng.gen_range(-2..=1);
            if c >= 0 {
                c += 1;
            }
            (i, j, rng.gen_range(0..dim), int(c))
        })
        .collect();
    StructureTable::from_brackets(dim, &entries).unwrap()
}

fn a2() -> Outcome {
    let h = lie_poisson_bivector(&LieAlgebra::heisenberg());
    ensure(schouten_bivector(&h, &h).unwrap().is_zero(), "Heisenberg Lie–Poisson is not Poisson")?;
    let mut rng = ChaCha8Rng::seed_from_u64(202);
    let (mut good, mut bad, mut tries) = (Vec::new(), Vec::new(), 0);
    while good.len() < 5 || bad.len() < 5 {
        tries += 1;
        ensure(tries < 10_000, "could not sample enough tables")?;
        let t = random_table(&mut rng);
        let is_lie = brute_jacobi(&t);
        if is_lie && good.len() < 5 && !(0..t.dim()).all(|k| (0..t.dim()).all(|i| (0..t.dim()).all(|j| t.get(k, i, j).is_zero()))) {
            good.push(t);
        } else if !is_lie && bad.len() < 5 {
            bad.push(t);
        }
    }
    for (n, t) in good.iter().enumerate() {
        let p = lie_poisson_from_table(t);
        ensure(schouten_bivector(&p, &p).unwrap().is_zero(), format!("Lie table {n} (dim {}) gives [Π,Π] ≠ 0", t.dim()))?;
    }
    for (n, t) in bad.iter().enumerate() {
        let p = lie_poisson_from_table(t);
        ensure(!schouten_bivector(&p, &p).unwrap().is_zero(), format!("non-Lie table {n} gives [Π,Π] = 0"))?;
    }
    Ok("Heisenberg + 5 Lie tables give zero, 5 non-Lie tables give nonzero".into())
}

fn groupoid_data(lambda: AlgBivector) -> (TrivialGroupoid, DirectSumPN) {
    let base = Chart::numbered("x", 2).unwrap();
    let u = build_trivial_groupoid(&base, &PolyGroup::new(GroupLaw::heisenberg()).unwrap()).unwrap();
    let data = DirectSumPN::new(&u, Bivector::wedge(&base, 0, 1), EndoField::identity(&base), lambda, AlgEndo::identity(3)).unwrap();
    (u, data)
}

fn a3() -> Outcome {
    let (u, data) = groupoid_data(AlgBivector::wedge(3, 0, 2));
    let r = trivial_pn_verify(&u, &data);
    ensure(r.passed(), format!("e1∧e3 fails: {:?}", r.failures().map(|c| &c.name).collect::<Vec<_>>()))?;
    for name in ["torsion_decomposition", "unit_restriction", "total.poisson", "total.nijenhuis", "total.compatible", "total.concomitant_zero"] {
        ensure(r.verdict(name).is_some_and(|v| v.is_pass()), format!("{name} missing or not PASS"))?;
    }
    let (u, data) = groupoid_data(AlgBivector::wedge(3, 0, 1));
    let r = trivial_pn_verify(&u, &data);
    ensure(!r.passed(), "e1∧e2 passes")?;
    let [_, ablock, _] = u.blocks();
    let failures: Vec<_> = r.failures().collect();
    for c in &failures {
        let in_group = c.name.starts_with("group.")
            || (c.name.starts_with("total.")
                && c.verdict.witness().is_some_and(|w| w.indices.iter().all(|i| ablock.contains(i))));
        ensure(in_group, format!("failure outside the group block: {} {:?}", c.name, c.verdict))?;
    }
    ensure(r.checks.iter().filter(|c| c.name.starts_with("base.")).all(|c| c.verdict.is_pass()), "base block fails")?;
    let names: Vec<_> = failures.iter().map(|c| c.name.as_str()).collect();
    Ok(format!("e1∧e3 PASS; e1∧e2 FAIL at {}", names.join(", ")))
}

fn a4() -> Outcome {
    let plan = plan();
    let mut rng = ChaCha8Rng::seed_from_u64(303);
    let mut operators = std::collections::BTreeSet::new();
    let mut check = |name: &'static str, sym: &dyn Tensor, recipe: &dyn Fn(&[Rational]) -> Vec<Rational>| -> std::result::Result<(), String> {
        let out = randomized_identity_check(sym, recipe, &plan);
        ensure(out.passed && out.samples == 20, format!("{name} disagrees: {out:?}"))?;
        let k = sym.labeled_components().len();
        if k > 0 {
            let bad = Perturbed::new(sym, k / 2, int(1));
            ensure(!randomized_identity_check(&bad, recipe, &plan).passed, format!("{name}: injected fault missed"))?;
        }
        operators.insert(name);
        Ok(())
    };
    for round in 0..10 {
        let c = Chart::numbered("x", 2 + round % 2).unwrap();
        let x = random_vector_field(&mut rng, &c, 3);
        let y = random_vector_field(&mut rng, &c, 3);
        let a = random_oneform(&mut rng, &c, 2);
        let b = random_oneform(&mut rng, &c, 2);
        let p = random_bivector(&mut rng, &c, 2);
        let q = random_bivector(&mut rng, &c, 2);
        let n = random_endo(&mut rng, &c, 1);
        let f = random_poly(&mut rng, &c, 3, 4);
        let g = random_poly(&mut rng, &c, 2, 3);
        let nf = EndoField::from_fn(&c, |i, j| if i == j { g.clone() } else { Poly::zero(&c) });
        check("lie_bracket", &lie_bracket(&x, &y).unwrap(), &*recipe_lie_bracket(&x, &y, &plan))?;
        check("torsion_on_fields", &torsion_on_fields(&n, &x, &y).unwrap(), &*recipe_torsion_on_fields(&n, &x, &y, &plan))?;
        check("nijenhuis_torsion", &nijenhuis_torsion(&n), &*recipe_nijenhuis_torsion(&n, &plan))?;
        check("deformed_bracket", &deformed_bracket(&n, &x, &y).unwrap(), &*recipe_deformed_bracket(&n, &x, &y, &plan))?;
        check("schouten_bivector", &schouten_bivector(&p, &q).unwrap(), &*recipe_schouten(&p, &q, &plan))?;
        check("sharp", &sharp(&p, &a).unwrap(), &*recipe_sharp(&p, &a))?;
        check("d_function", &d_function(&f), &*recipe_d_function(&f, &plan))?;
        check("lie_derivative_oneform", &lie_derivative_oneform(&x, &a).unwrap(), &*recipe_lie_derivative(&x, &a, &plan))?;
        check("oneform_bracket", &oneform_bracket(&p, &a, &b).unwrap(), &*recipe_oneform_bracket(&p, &a, &b, &plan))?;
        check("compatibility_defect", &compatibility_defect(&n, &p).unwrap(), &*recipe_compatibility_defect(&n, &p))?;
        check("np_bivector", &np_bivector(&nf, &p).unwrap(), &*recipe_np_bivector(&nf, &p))?;
        check("magri_morosi", &magri_morosi(&p, &nf).unwrap(), &*recipe_concomitant(&p, &nf, &plan))?;
    }
    Ok(format!("{} operators × 10 inputs × 20 points agree; every injected fault detected", operators.len()))
}

/// Null space of `n ↦ nΛ − Λnᵀ` by Gaussian elimination; a random
/// integer combination of the basis is compatible with Λ.
fn compatible_n(rng: &mut ChaCha8Rng, lambda: &AlgBivector) -> AlgEndo {
    let d = lambda.dim();
    let l = lambda.matrix();
    let unknowns = d * d;
    let mut rows: Vec<Vec<Rational>> = Vec::new();
    for a in 0..d {
        for b in 0..d {
            let mut row = vec![Rational::zero(); unknowns];
            for m in 0..d {
                row[a * d + m] += &l[m][b];
                row[b * d + m] -= &l[a][m];
            }
            rows.push(row);
        }
    }
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..unknowns {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else { continue };
        rows.swap(r, p);
        let inv = Rational::from_integer(1.into()) / &rows[r][col];
        rows[r] = rows[r].iter().map(|v| v * &inv).collect();
        for i in 0..rows.len() {
            if i != r && !rows[i][col].is_zero() {
                let f = rows[i][col].clone();
                rows[i] = (0..unknowns).map(|k| &rows[i][k] - &f * &rows[r][k]).collect();
            }
        }
        pivots.push(col);
        r += 1;
    }
    let free: Vec<_> = (0..unknowns).filter(|c| !pivots.contains(c)).collect();
    let mut x = vec![Rational::zero(); unknowns];
    for &f in &free {
        x[f] = int(rng.gen_range(-2..=2));
    }
    for (i, &p) in pivots.iter().enumerate() {
        x[p] = -free.iter().map(|&f| &rows[i][f] * &x[f]).fold(Rational::zero(), |a, b| a + b);
    }
    AlgEndo::new((0..d).map(|a| x[a * d..(a + 1) * d].to_vec()).collect()).unwrap()
}

fn a5() -> Outcome {
    let group = PolyGroup::new(GroupLaw::heisenberg()).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(505);
    let mut passes = 0;
    for round in 0..10 {
        let mut m = vec![vec![Rational::zero(); 3]; 3];
        for i in 0..3 {
            for j in i + 1..3 {
                let v = if (i, j) == (0, 1) && round % 2 == 0 { 0 } else { rng.gen_range(-2..=2) };
                m[i][j] = int(v);
                m[j][i] = int(-v);
            }
        }
        let lambda = AlgBivector::new(m).unwrap();
        let n = compatible_n(&mut rng, &lambda);
        ensure(lambda_n_verify(group.algebra(), &lambda, &n).verdict("compatible").unwrap().is_pass(), "sampled n is not compatible")?;
        let r = pncalc_core::liegroup::theorem31_verify(&group, &lambda, &n);
        for name in ["poisson", "nijenhuis", "compatible", "concomitant_zero"] {
            let alg = r.verdict(&format!("algebraic.{name}")).unwrap().is_pass();
            let man = r.verdict(&format!("manifold.{name}")).unwrap().is_pass();
            ensure(alg == man, format!("round {round}: {name} algebraic {alg} vs extension {man}"))?;
        }
        for name in ["bridge", "restriction", "torsion_bridge"] {
            ensure(r.verdict(name).unwrap().is_pass(), format!("round {round}: {name} fails: {:?}", r.verdict(name)))?;
        }
        if r.passed() {
            passes += 1;
        }
    }
    Ok(format!("10 compatible pairs agree verdict-for-verdict ({passes} full PASS); bridge and restriction exact"))
}

fn a6() -> Outcome {
    let group = PolyGroup::new(GroupLaw::heisenberg()).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(606);
    for round in 0..20 {
        let base = Chart::numbered("x", 1 + round % 2).unwrap();
        let u = build_trivial_groupoid(&base, &group).unwrap();
        let section = |rng: &mut ChaCha8Rng| {
            let x = random_vector_field(rng, &base, 2);
            let v = (0..3).map(|_| random_poly(rng, &base, 2, 2)).collect();
            AlgebroidSection::new(&u, x, v).unwrap()
        };
        let s1 = section(&mut rng);
        let s2 = section(&mut rng);
        let lhs = section_extend(&u, &algebroid_bracket(&u, &s1, &s2).unwrap()).unwrap();
        let rhs = lie_bracket(&section_extend(&u, &s1).unwrap(), &section_extend(&u, &s2).unwrap()).unwrap();
        ensure(lhs == rhs, format!("section_extend round {round}"))?;
        let v: Vec<Rational> = (0..3).map(|_| int(rng.gen_range(-3..=3))).collect();
        let w: Vec<Rational> = (0..3).map(|_| int(rng.gen_range(-3..=3))).collect();
        let lhs = group.extend_vector(&group.algebra().bracket(&v, &w)).unwrap();
        let rhs = lie_bracket(&group.extend_vector(&v).unwrap(), &group.extend_vector(&w).unwrap()).unwrap();
        ensure(lhs == rhs, format!("extend_vector round {round}"))?;
    }
    Ok("20 random sections and 20 random vector pairs, exact".into())
}

fn a7() -> Outcome {
    for (label, law) in [("abelian", GroupLaw::abelian(2)), ("heisenberg", GroupLaw::heisenberg())] {
        for base_dim in 1..=2 {
            let base = Chart::numbered("x", base_dim).unwrap();
            let u = build_trivial_groupoid(&base, &PolyGroup::new(law.clone()).unwrap()).unwrap();
            groupoid_axioms_verify(&u).map_err(|e| format!("{label} over ℝ^{base_dim}: {e}"))?;
        }
    }
    let g = Chart::numbered("g", 1).unwrap();
    let mc = GroupLaw::doubled_chart(1);
    let mutated = GroupLaw::new(&g, &mc, vec![parse_poly("x1 + y1 + x1^2*y1", &mc).unwrap()], vec![parse_poly("-g1", &g).unwrap()]).unwrap();
    let u = TrivialGroupoid::from_law_unchecked(&Chart::numbered("x", 1).unwrap(), mutated).unwrap();
    let r = groupoid_axioms_report(&u);
    let assoc = r.verdict("associativity").unwrap();
    ensure(!assoc.is_pass(), "mutated μ passes associativity")?;
    ensure(r.verdict("unit_laws").unwrap().is_pass(), "mutated μ should keep its unit laws")?;
    match groupoid_axioms_verify(&u) {
        Err(GroupoidError::Axiom { axiom: "associativity", .. }) => {}
        other => return Err(format!("expected an associativity failure, got {other:?}")),
    }
    Ok(format!("abelian and Heisenberg pass; mutated μ fails with {}", assoc.witness().unwrap()))
}

fn a8() -> Outcome {
    let fixtures = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures");
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let run = |model: &str, extra: &[&str]| {
        Command::new(env!("CARGO_BIN_EXE_pncalc"))
            .arg("check")
            .arg("--model")
            .arg(fixtures.join(model))
            .args(extra)
            .env_remove("PNCALC_SEED")
            .output()
            .expect("pncalc runs")
    };
    let mut reports = Vec::new();
    for k in 0..2 {
        let path = dir.path().join(format!("r{k}.json"));
        let out = run("groupoid_pass.json", &["--seed", "7", "--report", path.to_str().unwrap()]);
        ensure(out.status.code() == Some(0), format!("run {k} exit {:?}", out.status.code()))?;
        reports.push(std::fs::read(&path).map_err(|e| e.to_string())?);
    }
    ensure(reports[0] == reports[1], "json reports differ between runs")?;
    for (model, code) in [("groupoid_pass.json", 0), ("groupoid_fail.json", 1), ("bad_variable.json", 2), ("empty.json", 2)] {
        let got = run(model, &[]).status.code();
        ensure(got == Some(code), format!("{model}: exit {got:?}, expected {code}"))?;
    }
    Ok(format!("{}-byte report identical across runs; exit codes 0/1/2/2", reports[0].len()))
}
