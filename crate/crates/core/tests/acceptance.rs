//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on failure.

use std::collections::{BTreeSet, HashSet};
use std::time::{Duration, Instant};

use mukai::bqf::{self, Bqf};
use mukai::cli;
use mukai::group_g::{det3, GElement};
use mukai::lattice::{MukaiVector, SurfaceParams};
use mukai::numsol::{pell_fundamental, solution_count_class, solve_numerical, CountClass};
use mukai::presentation::{poincare_forms, presentation_case, CaseTag, PoincareForm};
use mukai::quad_arith::{is_square, RootInt, SlopeValue};
use mukai::tame::{Flavor, TameSystem};
use mukai::Error;
use num_bigint::BigInt;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

type Outcome = Result<String, String>;
type Check = (&'static str, fn() -> Outcome);

fn big(x: i64) -> BigInt {
    BigInt::from(x)
}

fn ctx(n: u64) -> SurfaceParams {
    SurfaceParams::new(n).unwrap()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(t: Instant, limit: Duration) -> Result<(), String> {
    ensure(t.elapsed() < limit, || format!("took {:?}, limit {:?}", t.elapsed(), limit))
}

fn table_reproduction() -> Outcome {
    let start = Instant::now();
    let f = Bqf::new;
    // expected class lists, ell = 1..10
    let expected_lists: Vec<Vec<Bqf>> = vec![
        vec![f(0, 1, 0), f(1, 0, -1)],
        vec![f(1, 0, -2)],
        vec![f(1, 0, -3)],
        vec![f(1, 0, -4)],
        vec![f(2, 1, -2), f(1, 0, -5)],
        vec![f(1, 0, -6)],
        vec![f(1, 0, -7)],
        vec![f(1, 0, -8)],
        vec![f(2, 1, -4), f(1, 0, -9)],
        vec![f(3, 1, -3), f(1, 0, -10)],
    ];
    let (code, out) = cli::run(["mukai", "qform-table", "--ell-max", "10"]);
    ensure(code == 0, || format!("exit {code}: {out}"))?;
    let json: serde_json::Value = serde_json::from_str(&out).map_err(|e| e.to_string())?;
    let rows = json["table"].as_array().ok_or("missing table")?;
    ensure(rows.len() == 10, || format!("{} rows", rows.len()))?;
    let coef = |v: &serde_json::Value, k: &str| -> i64 { v[k].as_str().unwrap_or("x").parse().unwrap_or(i64::MIN) };
    for (i, (row, expected)) in rows.iter().zip(&expected_lists).enumerate() {
        let ell = i as i64 + 1;
        let got: BTreeSet<Bqf> = row["classes"]
            .as_array()
            .ok_or("missing classes")?
            .iter()
            .map(|c| f(coef(c, "r"), coef(c, "d"), coef(c, "a")))
            .collect();
        // the dictionary: each listed form maps to its canonical representative
        let want: BTreeSet<Bqf> = expected.iter().map(|g| bqf::bqf_canonical(g).unwrap()).collect();
        ensure(got == want, || format!("l={ell}: got {got:?}, want {want:?}"))?;
        for g in &got {
            ensure(g.discriminant() == ell, || format!("l={ell}: {g} has discriminant {}", g.discriminant()))?;
        }
    }
    within(start, Duration::from_secs(5))?;
    Ok("qform-table --ell-max 10 matches the expected class lists".into())
}

fn known_equivalences() -> Outcome {
    let f = Bqf::new;
    let chains = [
        vec![f(2, 0, -3), f(2, -2, -1), f(1, 0, -6)],
        vec![f(2, 1, -3), f(2, 3, 1), f(1, 0, -7)],
        vec![f(2, 0, -5), f(3, 1, -3)],
    ];
    for chain in &chains {
        for x in chain {
            for y in chain {
                let eq = bqf::bqf_equivalent(x, y).map_err(|e| e.to_string())?;
                ensure(eq, || format!("{x} !~ {y}"))?;
            }
        }
    }
    Ok("every known equivalence holds".into())
}

fn dichotomy() -> Outcome {
    let start = Instant::now();
    let c = ctx(1);
    let bound = big(10_000);
    let mut report = Vec::new();
    for ell in [2i64, 3, 5, 6, 7, 8, 10] {
        let v = MukaiVector::new(1, 0, -ell);
        ensure(solution_count_class(&v, &c) == Ok(CountClass::ZeroOrInfinite), || format!("l={ell}: class"))?;
        let sols = solve_numerical(&v, &c, &bound).map_err(|e| e.to_string())?;
        let set: HashSet<_> = sols.iter().cloned().collect();
        ensure(set.len() == sols.len(), || format!("l={ell}: duplicates"))?;
        let g = pell_fundamental(&c, &big(ell))
            .and_then(|u| u.to_group_element(&c))
            .map_err(|e| e.to_string())?;
        let ginv = g.inverse();
        // longest chain s, g s, g^2 s, ... inside the solution set, from any start
        let mut best = 0;
        for s in &sols {
            let mut len = 1;
            for h in [&g, &ginv] {
                let mut cur = s.clone();
                while let Some(next) = cur.transform(h, &v, &c) {
                    if !set.contains(&next) {
                        break;
                    }
                    len += 1;
                    cur = next;
                }
            }
            best = best.max(len);
        }
        ensure(sols.len() >= 3 && best >= 3, || format!("l={ell}: {} solutions, chain {best}", sols.len()))?;
        report.push(format!("l={ell}:{}", sols.len()));
    }
    let one = solve_numerical(&MukaiVector::new(1, 0, -1), &c, &bound).map_err(|e| e.to_string())?;
    ensure(one.len() == 1, || format!("(1,0,-1): {} solutions", one.len()))?;
    let s = &one[0];
    let pair: BTreeSet<_> = [s.v1.clone(), s.v2.clone()].into();
    let want: BTreeSet<_> = [MukaiVector::new(1, 0, 0), MukaiVector::new(0, 0, 1)].into();
    ensure(pair == want, || format!("(1,0,-1): {s:?}"))?;
    let none = solve_numerical(&MukaiVector::new(2, 1, -2), &c, &bound).map_err(|e| e.to_string())?;
    ensure(none.is_empty(), || format!("(2,1,-2): {} solutions", none.len()))?;
    within(start, Duration::from_secs(10))?;
    Ok(format!("{}; (1,0,-1): 1; (2,1,-2): 0", report.join(" ")))
}

/// Smallest `q + p sqrt(l)` with `q = Q sqrt(s1)`, `p = P sqrt(r1)`, `r1 s1 = n`,
/// found by increasing `p^2`.
fn pell_brute(n: u64, ell: u64) -> (BigInt, BigInt, i8) {
    for p2 in 1u64.. {
        for r1 in (1..=n).filter(|r1| n.is_multiple_of(*r1)) {
            let s1 = n / r1;
            if p2 % r1 != 0 || !is_square(&big((p2 / r1) as i64)) {
                continue;
            }
            for eps in [-1i64, 1] {
                let q2 = (ell * p2) as i64 + eps;
                if q2 > 0 && q2 % s1 as i64 == 0 && is_square(&big(q2 / s1 as i64)) {
                    return (big(p2 as i64), big(q2), eps as i8);
                }
            }
        }
    }
    unreachable!()
}

fn pell_oracle() -> Outcome {
    for (n, ell) in [(1u64, 2u64), (1, 3), (1, 5), (1, 7), (2, 3), (3, 2)] {
        let u = pell_fundamental(&ctx(n), &big(ell as i64)).map_err(|e| e.to_string())?;
        let (p2, q2, eps) = pell_brute(n, ell);
        let got = (u.p.signed_square(), u.q.signed_square(), u.epsilon);
        ensure(got == (p2.clone(), q2.clone(), eps), || {
            format!("(n,l)=({n},{ell}): got {got:?}, brute force {:?}", (p2, q2, eps))
        })?;
    }
    let check = |n: u64, ell: i64, p: RootInt, q: RootInt, eps: i8| -> Result<(), String> {
        let u = pell_fundamental(&ctx(n), &big(ell)).map_err(|e| e.to_string())?;
        ensure(u.p == p && u.q == q && u.epsilon == eps, || format!("(n,l)=({n},{ell}): {u:?}"))
    };
    check(1, 2, RootInt::one(), RootInt::one(), -1)?;
    check(1, 5, RootInt::one(), RootInt::from_int(2), -1)?;
    check(2, 3, RootInt::one(), RootInt::sqrt(2), -1)?;
    Ok("six (n,l) pairs agree with ascending search".into())
}

fn interval_partition() -> Outcome {
    let start = Instant::now();
    let grid: Vec<SlopeValue> = (0..1000).map(|k| SlopeValue::ratio(-10 * 999 + 20 * k, 999).unwrap()).collect();
    for (n, ell) in [(1u64, 2i64), (1, 3), (2, 3)] {
        let sys = TameSystem::new(&ctx(n), &big(ell)).map_err(|e| e.to_string())?;
        for flavor in [Flavor::I, Flavor::Istar] {
            let specs: Vec<_> = (-6..=6).map(|m| sys.intervals(m, flavor)).collect();
            let mut probes: Vec<SlopeValue> = Vec::new();
            for s in &specs {
                for p in &s.pieces {
                    probes.push(p.lo.clone());
                    probes.push(p.hi.clone());
                }
            }
            for x in &probes {
                let hits = specs.iter().filter(|s| s.contains(x)).count();
                ensure(hits <= 1, || format!("({n},{ell}) {flavor:?}: endpoint {x} in {hits} intervals"))?;
            }
            for x in &grid {
                let hits: Vec<i64> = specs.iter().filter(|s| s.contains(x)).map(|s| s.m).collect();
                ensure(hits.len() == 1, || format!("({n},{ell}) {flavor:?}: {x} in {hits:?}"))?;
                let t = sys.classify(x, (-6, 6));
                let m = match flavor {
                    Flavor::I => t.m_sheaf,
                    Flavor::Istar => t.m_dual,
                };
                ensure(m == Some(hits[0]), || format!("({n},{ell}) classify({x}) = {t:?}, expected {}", hits[0]))?;
            }
        }
    }
    within(start, Duration::from_secs(5))?;
    Ok("grid of 1000 slopes covered once by I_m and once by I_m*, m in [-6,6]".into())
}

fn random_element(rng: &mut StdRng, c: &SurfaceParams, with_dual: bool) -> GElement {
    let mut gens = GElement::generators(c);
    if with_dual {
        gens.push(GElement::dualizing(c));
    }
    let len = rng.gen_range(1..=8);
    (0..len).fold(GElement::identity(c), |acc, _| {
        let x = &gens[rng.gen_range(0..gens.len())];
        let x = if rng.gen() { x.inverse() } else { x.clone() };
        acc.mul(&x).expect("closed under products")
    })
}

fn random_vector(rng: &mut StdRng) -> MukaiVector {
    MukaiVector::new(rng.gen_range(-50..=50), rng.gen_range(-50..=50), rng.gen_range(-50..=50))
}

fn group_properties() -> Outcome {
    const CASES: usize = 10_000;
    const NS: [u64; 9] = [1, 2, 3, 4, 5, 6, 10, 12, 30];
    let mut rng = StdRng::seed_from_u64(0x5eed);
    let mut failures = Vec::new();
    for i in 0..CASES {
        let c = ctx(NS[rng.gen_range(0..NS.len())]);
        let (x, y, z) = (
            random_element(&mut rng, &c, true),
            random_element(&mut rng, &c, true),
            random_element(&mut rng, &c, true),
        );
        let xy = x.mul(&y).unwrap();
        if xy.mul(&z).unwrap() != x.mul(&y.mul(&z).unwrap()).unwrap() {
            failures.push(format!("associativity #{i}"));
        }
        let id = GElement::identity(&c);
        if x.mul(&x.inverse()).unwrap() != id || x.inverse().mul(&x).unwrap() != id {
            failures.push(format!("inverse #{i}"));
        }
        let (v, w) = (random_vector(&mut rng), random_vector(&mut rng));
        if x.act(&v).pairing(&x.act(&w), &c) != v.pairing(&w, &c) {
            failures.push(format!("isometry #{i}"));
        }
        let (g, h) = (random_element(&mut rng, &c, false), random_element(&mut rng, &c, false));
        let sum: Vec<bool> = g.phi(&c).iter().zip(h.phi(&c)).map(|(a, b)| a ^ b).collect();
        if g.mul(&h).unwrap().phi(&c) != sum {
            failures.push(format!("phi #{i}"));
        }
        if det3(&g.theta_3x3()) != big(1) {
            failures.push(format!("det #{i}"));
        }
    }
    ensure(failures.is_empty(), || format!("{} failures, first {:?}", failures.len(), &failures[..failures.len().min(5)]))?;
    Ok(format!("{CASES} cases x 5 properties, zero failures"))
}

fn diagonalization() -> Outcome {
    let c = ctx(1);
    let bound = big(10_000);
    let mut rng = StdRng::seed_from_u64(7);
    let (mut ok, mut tried) = (0, 0);
    while ok < 100 {
        tried += 1;
        ensure(tried < 200_000, || format!("only {ok} solvable vectors found"))?;
        let (r, d, a) = (rng.gen_range(-20i64..=20), rng.gen_range(-20i64..=20), rng.gen_range(-20i64..=20));
        let ell = d * d - r * a;
        if !(2..=50).contains(&ell) || is_square(&big(ell)) {
            continue;
        }
        let v = MukaiVector::new(r, d, a);
        let rec = match bqf::birational_recipe(&v, &c, &bound) {
            Ok(rec) => rec,
            Err(Error::NoSolutionWithinBound) => continue,
            Err(e) => return Err(format!("{v}: {e}")),
        };
        let gm = &rec.gamma;
        let q = [[big(r), big(d)], [big(d), big(a)]];
        // tg Q g, written out
        let entry = |i: usize, j: usize| -> BigInt {
            let mut s = big(0);
            for k in 0..2 {
                for l in 0..2 {
                    s += &gm[k][i] * &q[k][l] * &gm[l][j];
                }
            }
            s
        };
        let e = big(rec.epsilon as i64);
        let want = [[-e.clone(), big(0)], [big(0), e * ell]];
        let got = [[entry(0, 0), entry(0, 1)], [entry(1, 0), entry(1, 1)]];
        ensure(got == want, || format!("{v}: tgQg = {got:?}, want {want:?}"))?;
        ok += 1;
    }
    let rec = bqf::birational_recipe(&MukaiVector::new(1, 1, -1), &c, &bound).map_err(|e| e.to_string())?;
    let want = [[big(1), big(-1)], [big(0), big(1)]];
    ensure(rec.gamma == want && rec.epsilon == -1, || format!("(1,1,-1): {rec:?}"))?;
    Ok(format!("100 recipes verified ({tried} draws); (1,1,-1) gives [[1,-1],[0,1]], eps=-1"))
}

fn worked_presentations() -> Outcome {
    let c = ctx(1);
    let bound = big(1000);
    let p = presentation_case(&MukaiVector::new(1, 0, -1), &c, &bound).map_err(|e| e.to_string())?;
    ensure(
        p.tag == CaseTag::A && p.v1_total == MukaiVector::new(1, 0, 0) && p.v2 == MukaiVector::new(0, 0, 1),
        || format!("(1,0,-1): {p:?}"),
    )?;
    let v = MukaiVector::new(1, 1, -1);
    let p = presentation_case(&v, &c, &bound).map_err(|e| e.to_string())?;
    ensure(p.tag == CaseTag::C && &p.v2 - &p.v1_total == v, || format!("(1,1,-1): {p:?}"))?;
    Ok("(1,0,-1) is case (a), (1,1,-1) is case (c)".into())
}

fn poincare_recognition() -> Outcome {
    let c = ctx(1);
    let n = 1i64;
    for ell in [2i64, 3] {
        for d in [1i64, 2] {
            let cases = [
                (PoincareForm::A, MukaiVector::new(ell * d * d * n - 1, ell * d, ell)),
                (PoincareForm::B, MukaiVector::new(d * d * n - ell, d, 1)),
                (PoincareForm::C, MukaiVector::new(ell - d * d * n, -d, -1)),
                (PoincareForm::D, MukaiVector::new(1, 0, -ell)),
            ];
            for (form, v) in cases {
                let got = poincare_forms(&v, &c, &big(ell));
                ensure(got.contains(&form), || format!("l={ell} d={d}: {v} gave {got:?}, expected {form}"))?;
            }
        }
    }
    for ell in [2i64, 3] {
        let got = poincare_forms(&MukaiVector::new(5, 0, 5), &c, &big(ell));
        ensure(got.is_empty(), || format!("(5,0,5) matched {got:?}"))?;
    }
    Ok("templates (a)-(d) recognized; (5,0,5) matches none".into())
}

fn main() {
    let criteria: [Check; 9] = [
        ("class table", table_reproduction),
        ("known equivalences", known_equivalences),
        ("solution dichotomy", dichotomy),
        ("Pell oracle", pell_oracle),
        ("interval partition", interval_partition),
        ("group properties", group_properties),
        ("diagonalization", diagonalization),
        ("worked presentations", worked_presentations),
        ("template recognition", poincare_recognition),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let res = std::panic::catch_unwind(f).unwrap_or_else(|_| Err("panicked".into()));
        let ms = t.elapsed().as_millis();
        match res {
            Ok(msg) => println!("PASS criterion {}: {name}: {msg} [{ms} ms]", i + 1),
            Err(msg) => {
                failed += 1;
                println!("FAIL criterion {}: {name}: {msg} [{ms} ms]", i + 1);
            }
        }
    }
    println!("{} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
