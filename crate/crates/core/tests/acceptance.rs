//! Acceptance checks, one line per criterion.
//!
//! Every criterion is exact; runtime limits are stated on the line that
//! enforces them. The process exits with status 1 if any criterion fails.

use std::time::{Duration, Instant};

use neargroup::associator::{construct_from_primitive, construct_standard, fixtures, IndexAlgebra, NearGroupData, NearGroupPrimitive};
use neargroup::braiding::{is_symmetric, search_braidings, twist_solutions, BraidingData};
use neargroup::classify::{classify_family, Family};
use neargroup::field::{affine_group_fusion, field_from_pi, is_isomorphic, pi_from_field, GaloisField};
use neargroup::obstruction::{flip_det, flip_det_closed_form, flip_permutation, permutation_sign, trivial_group_verdict, Verdict};
use neargroup::pentagon::functional::{count_monoidal_structures, verify_mmmm_m};
use neargroup::pentagon::oracle::{all_words, generic_pentagon_oracle};
use neargroup::pentagon::{verify_all, verify_gamma_lambda, verify_mmmm_g, verify_mu_symmetries, verify_word_families};
use neargroup::pi::{find_all_pi, Pi};
use neargroup::{AbelianGroup, Cyclotomic};

const FIELD_SIZES: [u32; 6] = [3, 4, 5, 7, 8, 9];

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn pi_for(q: u32) -> Pi {
    pi_from_field(q).expect("prime power").1
}

fn zeta(n: u32, j: i64) -> Cyclotomic {
    Cyclotomic::root_of_unity(n, j)
}

fn one() -> Cyclotomic {
    Cyclotomic::one()
}

/// Invariant-factor lists `d₁ | d₂ | … | d_r` with product `n` and `d_i > 1`.
fn abelian_groups(n: u32) -> Vec<Vec<u32>> {
    fn go(rest: u32, min: u32, acc: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if rest == 1 {
            out.push(acc.clone());
            return;
        }
        for d in (min.max(2)..=rest).filter(|d| rest.is_multiple_of(*d) && d.is_multiple_of(min)) {
            acc.push(d);
            go(rest / d, d, acc, out);
            acc.pop();
        }
    }
    let mut out = Vec::new();
    go(n, 1, &mut Vec::new(), &mut out);
    out
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let expected = [1u32, 2, 3, 4, 6, 7, 8, 10, 12, 15];
    let mut groups = 0;
    let mut nonempty = Vec::new();
    for n in 1..=15u32 {
        for factors in abelian_groups(n) {
            groups += 1;
            let g = AbelianGroup::new(factors.clone()).map_err(|e| e.to_string())?;
            let found = find_all_pi(&g);
            if !found.is_empty() {
                ensure(g.is_cyclic(), || format!("non-cyclic group {factors:?} has a π"))?;
                nonempty.push(n);
            }
        }
    }
    let elapsed = start.elapsed();
    ensure(nonempty == expected, || format!("nonempty for orders {nonempty:?}, expected {expected:?}"))?;
    ensure(elapsed < Duration::from_secs(60), || format!("took {elapsed:?}, limit 60 s"))?;
    Ok(format!("{groups} groups of order <= 15; π exists exactly for cyclic orders {nonempty:?}; {elapsed:.2?} (< 60 s)"))
}

fn criterion_2() -> Outcome {
    let mut checked = 0;
    for q in FIELD_SIZES {
        let f = GaloisField::new(q).map_err(|e| e.to_string())?;
        let g = AbelianGroup::cyclic(q - 1);
        let pis = find_all_pi(&g);
        ensure(pis.contains(&pi_for(q)), || format!("q = {q}: the π of F_q is not among the searched ones"))?;
        for pi in &pis {
            let table = field_from_pi(pi).map_err(|e| format!("q = {q}, π = {}: {e}", pi.cycle_notation()))?;
            table.check_axioms().map_err(|e| format!("q = {q}: {e}"))?;
            ensure(is_isomorphic(&table, &f), || format!("q = {q}, π = {}: not isomorphic to F_q", pi.cycle_notation()))?;
            checked += 1;
        }
    }
    Ok(format!("{checked} fields rebuilt from π for q in {FIELD_SIZES:?}; all axioms hold and each is isomorphic to F_q"))
}

fn criterion_3() -> Outcome {
    let mut parts = Vec::new();
    for q in FIELD_SIZES {
        let start = Instant::now();
        let d = construct_standard(&pi_for(q)).map_err(|e| e.to_string())?;
        let reports = [
            ("gamma-lambda", verify_gamma_lambda(&d)),
            ("mu-symmetries", verify_mu_symmetries(&d)),
            ("mmmm/g", verify_mmmm_g(&d)),
            ("mmmm/m", verify_mmmm_m(&d.primitive, &d.alg)),
        ];
        for (name, r) in &reports {
            ensure(r.failure_count() == 0, || format!("q = {q}: {name} has {} failures: {:?}", r.failure_count(), r.failing_families()))?;
        }
        let elapsed = start.elapsed();
        ensure(elapsed < Duration::from_secs(600), || format!("q = {q} took {elapsed:?}, limit 10 min"))?;
        parts.push(format!("k={} {:.1?}", d.k(), elapsed));
    }
    Ok(format!("standard data passes all four verifiers with 0 failures ({}; each < 10 min)", parts.join(", ")))
}

fn criterion_4() -> Outcome {
    let mut words = 0;
    for q in [3, 4, 5] {
        let d = construct_standard(&pi_for(q)).map_err(|e| e.to_string())?;
        for (w, e) in all_words(&d) {
            let o = generic_pentagon_oracle(&d, w, e);
            let f = verify_word_families(&d, w, e);
            ensure(o.passed() == f.passed(), || format!("q = {q}, {}: oracle {} vs families {:?}", o.family, o.passed(), f.failing_families()))?;
            ensure(o.passed(), || format!("q = {q}, {}: both fail", o.family))?;
            words += 1;
        }
    }
    Ok(format!("oracle and family verifiers agree on all {words} words for k = 1, 2, 3"))
}

fn stated_primitive(alg: &IndexAlgebra, delta: i8, xi: Vec<Cyclotomic>, c_eps: Vec<Cyclotomic>, n: &[((usize, usize), Cyclotomic)]) -> NearGroupPrimitive {
    let mut p = NearGroupPrimitive::ones(alg);
    p.delta = delta;
    p.xi = xi;
    p.c_eps = c_eps;
    for (key, v) in n {
        p.n_func.insert(*key, v.clone());
    }
    p
}

fn compare(name: &str, fixture: &NearGroupData, built: &NearGroupData) -> Result<usize, String> {
    let pairs = [
        ("m", &fixture.m_block, &built.m_block),
        ("r", &fixture.r_block, &built.r_block),
        ("c", &fixture.c_block, &built.c_block),
        ("n", &fixture.n_block, &built.n_block),
    ];
    let mut entries = 0;
    for (block, a, b) in pairs {
        let diff = a.diff_entries(b);
        ensure(diff.is_empty(), || format!("{name}: μ block {block} differs at {} entries", diff.len()))?;
        entries += a.rows() * a.cols();
    }
    for (t, (fa, fb)) in [(&fixture.gamma1, &built.gamma1), (&fixture.gamma2, &built.gamma2), (&fixture.gamma3, &built.gamma3), (&fixture.lambda, &built.lambda)]
        .into_iter()
        .enumerate()
    {
        for (a, b) in fa.iter().zip(fb) {
            ensure(a.diff_entries(b).is_empty(), || format!("{name}: tensor {t} differs"))?;
            entries += a.rows() * a.cols();
        }
    }
    Ok(entries)
}

fn criterion_5() -> Outcome {
    let mut entries = 0;
    for j in 0..3 {
        let f = fixtures::z2k1(zeta(3, j)).map_err(|e| e.to_string())?;
        let p = stated_primitive(&f.alg, 1, vec![zeta(3, j)], vec![one()], &[]);
        entries += compare(&format!("Z/2 ξ = ζ3^{j}"), &f, &construct_from_primitive(&f.pi, p).map_err(|e| e.to_string())?)?;
    }
    for xi in [1i64, -1] {
        let f = fixtures::z3k2(xi).map_err(|e| e.to_string())?;
        let x = Cyclotomic::from_i64(xi);
        let p = stated_primitive(&f.alg, xi as i8, vec![x.clone(), x.clone()], vec![one(), x.clone()], &[((1, 1), one()), ((2, 2), x.clone())]);
        entries += compare(&format!("Z/3 ξ = {xi}"), &f, &construct_from_primitive(&f.pi, p).map_err(|e| e.to_string())?)?;
    }
    let f = fixtures::z4k3().map_err(|e| e.to_string())?;
    entries += compare("Z/4", &f, &construct_standard(&f.pi).map_err(|e| e.to_string())?)?;
    Ok(format!("6 worked examples equal the construction from their stated primitive values ({entries} entries compared)"))
}

fn criterion_6() -> Outcome {
    let mut found = Vec::new();
    for (q, expected) in [(3u32, 3u128), (4, 2), (5, 1)] {
        let c = count_monoidal_structures(&IndexAlgebra::new(&pi_for(q))).map_err(|e| e.to_string())?;
        ensure(c.orbits == expected, || format!("q = {q}: {} structures, expected {expected}", c.orbits))?;
        for rep in &c.representatives {
            let d = construct_from_primitive(&pi_for(q), rep.clone()).map_err(|e| e.to_string())?;
            ensure(verify_all(&d).passed(), || format!("q = {q}: a representative fails the pentagon"))?;
        }
        found.push(c.orbits);
    }
    Ok(format!("monoidal structures up to gauge: {found:?} for (Z/2,1), (Z/3,2), (Z/4,3)"))
}

fn braidings_of(d: &NearGroupData) -> Result<(usize, Vec<BraidingData>), String> {
    let s = search_braidings(d, 60).map_err(|e| e.to_string())?;
    Ok((s.candidates.len(), s.braidings))
}

fn criterion_7() -> Outcome {
    let err = |e: neargroup::Error| e.to_string();
    // (Z/2,1): three braidings on ξ = 1 indexed by ψ³ = 1 with σ₃(ε) = ψ⁻¹.
    let d = fixtures::z2k1(one()).map_err(err)?;
    let (_, bs) = braidings_of(&d)?;
    ensure(bs.len() == 3, || format!("Z/2 ξ = 1: {} braidings", bs.len()))?;
    for b in &bs {
        let psi = &b.psi[0];
        ensure(psi.pow(3).map_err(err)?.is_one(), || "Z/2: ψ³ ≠ 1".into())?;
        ensure(b.sigma3_eps == psi.inv().map_err(err)?, || "Z/2: σ₃(ε) ≠ ψ⁻¹".into())?;
        let trivial = psi.is_one();
        ensure(is_symmetric(&d, b).map_err(err)? == trivial, || "Z/2: symmetry differs from ψ = 1".into())?;
        ensure(twist_solutions(&d, b).map_err(err)?.is_empty() != trivial, || "Z/2: balance differs from ψ = 1".into())?;
    }
    for j in [1, 2] {
        let (cands, bs) = braidings_of(&fixtures::z2k1(zeta(3, j)).map_err(err)?)?;
        ensure(bs.is_empty(), || format!("Z/2 ξ = ζ3^{j} is braided"))?;
        ensure(cands == 3, || format!("Z/2 ξ = ζ3^{j}: {cands} forward solutions"))?;
    }

    // (Z/3,2): four braidings on ξ = 1 with ψ(1)² = ψ(2)² = 1.
    let d = fixtures::z3k2(1).map_err(err)?;
    let (_, bs) = braidings_of(&d)?;
    ensure(bs.len() == 4, || format!("Z/3 ξ = 1: {} braidings", bs.len()))?;
    let mut signs = Vec::new();
    for b in &bs {
        let (p1, p2) = (&b.psi[0], &b.psi[1]);
        ensure((p1 * p1).is_one() && (p2 * p2).is_one(), || "Z/3: ψ(j)² ≠ 1".into())?;
        ensure(b.sigma3_eps == p1 * p2, || "Z/3: σ₃(ε) ≠ ψ(1)ψ(2)".into())?;
        ensure(is_symmetric(&d, b).map_err(err)? == (p1 == p2), || "Z/3: symmetry differs from ψ(1) = ψ(2)".into())?;
        let tw = twist_solutions(&d, b).map_err(err)?;
        let theta = if p1 == p2 { one() } else { Cyclotomic::from_i64(-1) };
        ensure(tw.len() == 1 && tw[0].theta_m == theta, || "Z/3: twist differs".into())?;
        signs.push((p1.is_one(), p2.is_one()));
    }
    signs.sort();
    signs.dedup();
    ensure(signs.len() == 4, || "Z/3: braidings do not cover all sign pairs".into())?;
    let (_, bs) = braidings_of(&fixtures::z3k2(-1).map_err(err)?)?;
    ensure(bs.is_empty(), || "Z/3 ξ = -1 is braided".into())?;

    // (Z/4,3): five forward solutions, one braiding, symmetric and balanced.
    let d = fixtures::z4k3().map_err(err)?;
    let (cands, bs) = braidings_of(&d)?;
    ensure(cands == 5 && bs.len() == 1, || format!("Z/4: {cands} candidates, {} braidings", bs.len()))?;
    ensure(bs[0] == BraidingData::trivial(3), || "Z/4: braiding is not ψ = 1".into())?;
    ensure(is_symmetric(&d, &bs[0]).map_err(err)?, || "Z/4: not symmetric".into())?;
    ensure(!twist_solutions(&d, &bs[0]).map_err(err)?.is_empty(), || "Z/4: not balanced".into())?;

    // The same table from the classifier, starting from the field alone.
    let rows: Vec<_> = Family::ALL.iter().map(|&f| classify_family(f, 60)).collect::<Result<_, _>>().map_err(err)?;
    let counts: Vec<usize> = rows.iter().map(|r| r.structures.iter().map(|s| s.braidings.len()).sum()).collect();
    ensure(counts == [3, 4, 1], || format!("classifier braiding counts {counts:?}"))?;
    let fields: Vec<&str> = rows.iter().map(|r| r.field.as_str()).collect();
    ensure(fields == ["F_3", "F_{2^2}", "F_5"], || format!("fields {fields:?}"))?;
    ensure(rows[1].balance_text() == "all balanced" && rows[2].balance_text() == "all balanced", || "balance row".into())?;
    ensure(rows[2].symmetry_text() == "all symmetric", || "symmetry row".into())?;
    Ok(format!("braidings {counts:?}; balance and symmetry as tabulated; fields {fields:?}; twists θ_m = 1 or -1 as expected"))
}

fn criterion_8() -> Outcome {
    for k in 1..=20usize {
        let v = trivial_group_verdict(k).map_err(|e| e.to_string())?;
        let expected = if matches!(k % 4, 2 | 3) { Verdict::Obstructed } else { Verdict::NotObstructed };
        ensure(v.verdict == expected, || format!("k = {k}: {:?}", v.verdict))?;
        ensure(v.witness.lattice_consistent == (expected == Verdict::NotObstructed), || format!("k = {k}: lattice route disagrees"))?;
    }
    for k in 1..=8usize {
        let sign = permutation_sign(&flip_permutation(k));
        let det = flip_det(k).map_err(|e| e.to_string())?;
        ensure(det == Cyclotomic::from_i64(sign) && sign == flip_det_closed_form(k), || format!("k = {k}: det {det}, sign {sign}"))?;
    }
    Ok("verdicts for k = 1..20 follow k mod 4 (lattice route agrees); flip determinants for k = 1..8 match the permutation sign".into())
}

fn criterion_9() -> Outcome {
    let mut rows = Vec::new();
    for q in FIELD_SIZES {
        let a = affine_group_fusion(q).map_err(|e| e.to_string())?;
        let qq = q as usize;
        let got = (a.group_order, a.linear_irreps, a.big_irrep_dim, a.k);
        ensure(got == (qq * (qq - 1), qq - 1, qq - 1, qq - 2), || format!("q = {q}: {got:?}"))?;
        ensure(a.conjugacy_classes == a.linear_irreps + 1, || format!("q = {q}: {} classes", a.conjugacy_classes))?;
        rows.push(format!("{got:?}"));
    }
    Ok(format!("affine groups give {}", rows.join(" ")))
}

fn criterion_10() -> Outcome {
    let mut total = 0;
    for q in [3, 4, 5] {
        let d = construct_standard(&pi_for(q)).map_err(|e| e.to_string())?;
        let mu = d.assemble_mu();
        for i in 0..mu.rows() {
            for j in 0..mu.cols() {
                let mut m = mu.clone();
                m.set(i, j, mu.get(i, j) + &one());
                let p = d.with_mu(&m).map_err(|e| e.to_string())?;
                ensure(!verify_all(&p).passed(), || format!("q = {q}: μ[{i},{j}] + 1 goes unnoticed"))?;
                total += 1;
            }
        }
    }
    Ok(format!("all {total} single-entry +1 perturbations of μ for k = 1, 2, 3 are flagged"))
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("π characterization", criterion_1),
        ("field reconstruction", criterion_2),
        ("construction correctness", criterion_3),
        ("oracle agreement", criterion_4),
        ("fixture fidelity", criterion_5),
        ("monoidal counts", criterion_6),
        ("braiding classification", criterion_7),
        ("obstruction pipeline", criterion_8),
        ("affine-group fusion", criterion_9),
        ("perturbation detectability", criterion_10),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let (tag, detail) = match f() {
            Ok(d) => ("PASS", d),
            Err(d) => {
                failed += 1;
                ("FAIL", d)
            }
        };
        println!("criterion {:>2} {tag} {name}: {detail} [{:.1?}]", i + 1, start.elapsed());
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
