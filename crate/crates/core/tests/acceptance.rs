//! Acceptance criteria 1 to 10, one line each. Expected values come from
//! oracles written here: brute-force abelianization census, closed-form
//! cyclic cohomology, fraction enumeration and determinantal divisors by
//! Laplace expansion.

use std::process::Command;
use std::sync::Arc;
use std::time::{Duration, Instant};

use pickernel::cli::random::ModuleSampler;
use pickernel::cli::suite::{exactness_sequences, inflation_triples, shapiro_triples};
use pickernel::cohomology::{cyclic_h_oracle, h1, h2, inflation_restriction, shapiro_check, six_term_sequence};
use pickernel::gmodules::{builtin_battery, FiniteGroup, GModule};
use pickernel::inseparable::{class_separator, desk_scale_class_count, verify_w_identities, TowerElement};
use pickernel::integer::Integer;
use pickernel::picard::{
    conductor_square_pic, descent_kernel, group_ring_pic, pic_torsion, ConductorSquareSpec, FieldDescriptor,
    NodeRing, UnitModel,
};
use pickernel::zlattice::{smith_normal_form, FgAbelianGroup, IntMatrix};
use num_bigint::BigInt;
use num_integer::Integer as _;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn group(orders: &[u64]) -> FgAbelianGroup {
    let orders: Vec<Integer> = orders.iter().map(|&d| Integer::from(d)).collect();
    FgAbelianGroup::from_cyclic_orders(&orders, 0)
}

// ---------------------------------------------------------------------------
// abelianization census

/// `G/[G, G]` from the multiplication table: close the commutators, then
/// read the invariant factors off the number of elements of each order.
fn abelianization_census(g: &FiniteGroup) -> FgAbelianGroup {
    let t = g.table();
    let n = t.len();
    let inv: Vec<usize> = (0..n).map(|a| (0..n).find(|&b| t[a][b] == 0).unwrap()).collect();
    let mut derived = vec![false; n];
    derived[0] = true;
    let mut members = vec![0];
    for a in 0..n {
        for b in 0..n {
            let c = t[t[inv[a]][inv[b]]][t[a][b]];
            if !derived[c] {
                derived[c] = true;
                members.push(c);
            }
        }
    }
    let mut i = 0;
    while i < members.len() {
        for j in 0..members.len() {
            let c = t[members[i]][members[j]];
            if !derived[c] {
                derived[c] = true;
                members.push(c);
            }
        }
        i += 1;
    }
    // coset of each element
    let mut coset = vec![usize::MAX; n];
    let mut reps = Vec::new();
    for a in 0..n {
        if coset[a] == usize::MAX {
            for &d in &members {
                coset[t[a][d]] = reps.len();
            }
            reps.push(a);
        }
    }
    let k = reps.len() as u64;
    let order_of = |a: usize| {
        let (mut x, mut o) = (a, 1u64);
        while coset[x] != coset[0] {
            x = t[x][a];
            o += 1;
        }
        o
    };
    // #{x : x^d = 1} for each d | k
    let orders: Vec<u64> = reps.iter().map(|&a| order_of(a)).collect();
    let census: Vec<(u64, usize)> =
        (1..=k).filter(|d| k.is_multiple_of(*d)).map(|d| (d, orders.iter().filter(|&&o| d % o == 0).count())).collect();
    let candidate = chains(k, 1)
        .into_iter()
        .find(|c| census.iter().all(|&(d, count)| c.iter().map(|&ni| gcd(d, ni)).product::<u64>() == count as u64))
        .expect("some abelian group matches the census");
    group(&candidate)
}

/// Divisibility chains `n₁ | n₂ | … ` of integers > 1 with product `k`,
/// each a multiple of `base`.
fn chains(k: u64, base: u64) -> Vec<Vec<u64>> {
    if k == 1 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for d in (2..=k).filter(|d| k.is_multiple_of(*d) && d % base == 0) {
        for mut rest in chains(k / d, d) {
            if rest.iter().all(|r| r % d == 0) {
                rest.insert(0, d);
                out.push(rest);
            }
        }
    }
    out
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let mut rows = Vec::new();
    for g in builtin_battery() {
        let expected = abelianization_census(&g);
        let pic = group_ring_pic(&g).map_err(|e| e.to_string())?;
        ensure(pic.pic == expected, format!("{g}: Pic {} but census {expected}", pic.pic))?;
        ensure(pic.matches_abelianization && pic.paths_agree(), format!("{g}: checks disagree"))?;
        rows.push(format!("{g} {expected}"));
    }
    let secs = start.elapsed().as_secs_f64();
    ensure(secs < 10.0, format!("took {secs:.1} s"))?;
    Ok(format!("8/8 exact in {secs:.2} s ({})", rows.join("; ")))
}

fn criterion_2() -> Outcome {
    let k = descent_kernel(&UnitModel::circle()).map_err(|e| e.to_string())?;
    ensure(k == group(&[2]), format!("kernel {k}"))?;
    Ok(format!("kernel {k}"))
}

fn criterion_3() -> Outcome {
    for g in builtin_battery() {
        let m = GModule::regular(&g);
        let (a, b) = (h1(&m).map_err(|e| e.to_string())?, h2(&m).map_err(|e| e.to_string())?);
        ensure(a.is_trivial() && b.is_trivial(), format!("{g}: H¹ = {a}, H² = {b}"))?;
    }
    Ok("8/8 groups".into())
}

fn criterion_4() -> Outcome {
    let names = ["C1", "C2", "C3", "C4", "C5", "C6", "C7", "C8", "D2", "S3", "D4", "Q8"];
    let gs: Vec<Arc<FiniteGroup>> = names.iter().map(|n| Arc::new(FiniteGroup::builtin(n).unwrap())).collect();
    let mut sampler = ModuleSampler::new(41);
    let (mut total, mut nonzero) = (0, 0);
    for round in 0..9 {
        for g in &gs {
            let m = sampler.module(g, 4);
            ensure(m.rank() <= 4, "rank above 4")?;
            let order = Integer::from(g.order() as u64);
            for (d, h) in [(1, h1(&m)), (2, h2(&m))] {
                let h = h.map_err(|e| e.to_string())?;
                let ok = h.free_rank() == 0 && h.invariant_factors().iter().all(|f| f.divides(&order));
                ensure(ok, format!("round {round}, {g}, H^{d} = {h}"))?;
                nonzero += !h.is_trivial() as usize;
            }
            total += 1;
        }
    }
    ensure(total >= 100, "fewer than 100 modules")?;
    Ok(format!("{total} modules, {nonzero} nonzero groups, 0 violations"))
}

/// `H¹(C_n, Z/a) = Z/gcd(n, a)` and `H²(C_n, Z/a) = Z/gcd(n, a)` for the
/// trivial action, with `a = 0` meaning `Z`: `H¹ = 0`, `H² = Z/n`.
fn trivial_cyclic(n: u64, a: u64, degree: usize) -> FgAbelianGroup {
    match (a, degree) {
        (0, 1) => FgAbelianGroup::trivial(),
        (0, _) => group(&[n]),
        _ => group(&[gcd(n, a)]),
    }
}

fn criterion_5() -> Outcome {
    let gs: Vec<Arc<FiniteGroup>> = (1..=12).map(|n| Arc::new(FiniteGroup::cyclic(n).unwrap())).collect();
    let mut sampler = ModuleSampler::new(51);
    let mut total = 0;
    for _ in 0..9 {
        for g in &gs {
            let m = sampler.module(g, 4);
            for d in [1, 2] {
                let ours = pickernel::cohomology::cohomology(&m, d).map_err(|e| e.to_string())?;
                let oracle = cyclic_h_oracle(&m, d).map_err(|e| e.to_string())?;
                ensure(ours == oracle, format!("{g}, degree {d}: {ours} vs oracle {oracle}"))?;
            }
            total += 1;
        }
    }
    for n in 1..=12u64 {
        let g = Arc::new(FiniteGroup::cyclic(n as usize).unwrap());
        for a in [0, 2, 3, 4, 6, 12] {
            let m = GModule::trivial(&g, if a == 0 { FgAbelianGroup::free(1) } else { group(&[a]) });
            for d in [1, 2] {
                let ours = pickernel::cohomology::cohomology(&m, d).map_err(|e| e.to_string())?;
                ensure(ours == trivial_cyclic(n, a, d), format!("C{n}, Z/{a}, degree {d}: {ours}"))?;
            }
            total += 1;
        }
    }
    ensure(total >= 100, "fewer than 100 modules")?;
    Ok(format!("{total} modules, 0 disagreements"))
}

fn criterion_6() -> Outcome {
    let seqs = exactness_sequences(61);
    let battery = builtin_battery();
    for (i, (name, ses)) in seqs.iter().enumerate() {
        let six = six_term_sequence(ses).map_err(|e| format!("{name}: {e}"))?;
        ensure(six.is_exact() && six.connecting_well_defined, format!("{name}: {:?}", six.exact_at))?;
        if i < battery.len() {
            ensure(six.second_connecting_map().is_isomorphism(), format!("{name}: δ not an isomorphism"))?;
            let census = abelianization_census(&battery[i]);
            ensure(six.groups[6] == census, format!("{name}: H²(G, Z) = {} vs {census}", six.groups[6]))?;
        }
    }
    let infl = inflation_triples(62);
    for (n, m) in &infl {
        let ir = inflation_restriction(m, n).map_err(|e| e.to_string())?;
        ensure(ir.is_exact(), format!("inflation-restriction over {} in {}", n.order(), n.parent()))?;
    }
    let shap = shapiro_triples(63);
    for (h, m) in &shap {
        let s = shapiro_check(h, m).map_err(|e| e.to_string())?;
        ensure(s.isomorphic, format!("Shapiro over {} in {}", h.order(), h.parent()))?;
    }
    ensure(seqs.len() >= 25 && infl.len() >= 25 && shap.len() >= 15, "too few cases")?;
    Ok(format!("{} sequences, {} inflation-restriction, {} Shapiro, 0 failures", seqs.len(), infl.len(), shap.len()))
}

/// Reduced denominators of `a/n`, `0 ≤ a < n`, that are `m`-supported.
fn fraction_orders(n: u64, m: Option<u64>) -> Vec<u64> {
    (0..n)
        .map(|a| n / gcd(a, n))
        .filter(|&d| match m {
            None => true,
            Some(m) => {
                let mut d = d;
                for p in 2..=m {
                    if m % p == 0 {
                        while d % p == 0 {
                            d /= p;
                        }
                    }
                }
                d == 1
            }
        })
        .collect()
}

fn criterion_7() -> Outcome {
    let mut cases = 0;
    let rings = [(None, NodeRing::Rationals), (Some(2), NodeRing::Localized { m: 2 }),
        (Some(6), NodeRing::Localized { m: 6 }), (Some(30), NodeRing::Localized { m: 30 })];
    for (m, ring) in rings {
        let pic = conductor_square_pic(ConductorSquareSpec::Node { ring }).map_err(|e| e.to_string())?;
        for n in 1..=50 {
            let orders = fraction_orders(n, m);
            // a finite subgroup of Q/Z with an element of order equal to its size is cyclic
            let size = orders.len() as u64;
            ensure(orders.iter().max() == Some(&size), format!("enumeration for n = {n} is not cyclic"))?;
            let t = pic_torsion(&pic, n).map_err(|e| e.to_string())?;
            ensure(t == group(&[size]), format!("m = {m:?}, n = {n}: {t} vs Z/{size}"))?;
            cases += 1;
        }
    }
    for q in 2..=27u64 {
        let Some(p) = (2..=q).find(|p| q % p == 0) else { continue };
        let mut e = 0;
        let mut x = q;
        while x % p == 0 {
            x /= p;
            e += 1;
        }
        if x != 1 {
            continue;
        }
        let pic = conductor_square_pic(ConductorSquareSpec::Cusp { field: FieldDescriptor::finite(q).unwrap() })
            .map_err(|e| e.to_string())?;
        let expected = group(&vec![p; e]);
        ensure(pic.as_finite() == Some(expected.clone()), format!("F_{q}: {pic} vs {expected}"))?;
        cases += 1;
    }
    Ok(format!("{cases} cases exact"))
}

fn criterion_8() -> Outcome {
    let start = Instant::now();
    let mut pairs = 0;
    for (p, q) in [(2u64, 4u64), (3, 3), (3, 9), (5, 5)] {
        ensure(verify_w_identities(p, q) == Ok(true), format!("identities fail for ({p}, {q})"))?;
        let r = q / p;
        for a in 0..p {
            for b in a + 1..p {
                let c = |x: u64| TowerElement::constant(p, x as i64);
                let s = class_separator(p, q, &c(a), &c(b)).map_err(|e| e.to_string())?;
                let want = (r * (q - 2)) as usize;
                ensure(s.z_degree == want && s.nonconstant, format!("({p}, {q}) pair ({a}, {b}): {}", s.z_degree))?;
                pairs += 1;
            }
        }
        let count = desk_scale_class_count(p, q).map_err(|e| e.to_string())?;
        ensure(count == p as usize, format!("({p}, {q}): {count} classes"))?;
    }
    let secs = start.elapsed().as_secs_f64();
    ensure(secs < 60.0, format!("took {secs:.1} s"))?;
    Ok(format!("4 (p, q) cases, {pairs} pairs, {secs:.2} s"))
}

/// Laplace expansion along the first row.
fn det(m: &[Vec<BigInt>]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    (0..n)
        .filter(|&j| !m[0][j].is_zero())
        .map(|j| {
            let minor: Vec<Vec<BigInt>> = m[1..]
                .iter()
                .map(|row| row.iter().enumerate().filter(|&(k, _)| k != j).map(|(_, x)| x.clone()).collect())
                .collect();
            let term = &m[0][j] * det(&minor);
            if j % 2 == 0 {
                term
            } else {
                -term
            }
        })
        .sum()
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    (k - 1..n)
        .flat_map(|last| {
            combinations(last, k - 1).into_iter().map(move |mut c| {
                c.push(last);
                c
            })
        })
        .collect()
}

fn determinantal(m: &[Vec<BigInt>], k: usize) -> BigInt {
    let (r, c) = (m.len(), m[0].len());
    let mut g = BigInt::zero();
    for rows in combinations(r, k) {
        for cols in combinations(c, k) {
            let minor: Vec<Vec<BigInt>> = rows.iter().map(|&i| cols.iter().map(|&j| m[i][j].clone()).collect()).collect();
            g = g.gcd(&det(&minor));
        }
    }
    g
}

fn dense(m: &IntMatrix) -> Vec<Vec<BigInt>> {
    m.row_vecs().iter().map(|row| row.iter().map(Integer::to_big).collect()).collect()
}

fn criterion_9() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for case in 0..500 {
        let (r, c) = (rng.gen_range(1..=6), rng.gen_range(1..=6));
        let rows: Vec<Vec<i64>> = (0..r).map(|_| (0..c).map(|_| rng.gen_range(-20..=20)).collect()).collect();
        let m = IntMatrix::from_i64_rows(c, &rows);
        let snf = smith_normal_form(&m);
        ensure(snf.u.mul(&m).mul(&snf.v) == snf.d, format!("case {case}: D ≠ UmV"))?;
        for u in [&snf.u, &snf.v] {
            ensure(det(&dense(u)).abs().is_one(), format!("case {case}: not unimodular"))?;
        }
        let diag: Vec<BigInt> = (0..r.min(c)).map(|i| snf.d.get(i, i).to_big()).collect();
        for i in 0..r {
            for j in 0..c {
                ensure(i == j || snf.d.get(i, j).is_zero(), format!("case {case}: off-diagonal entry"))?;
            }
        }
        ensure(diag.iter().all(|d| !d.is_negative()), format!("case {case}: negative diagonal"))?;
        for w in diag.windows(2) {
            let ok = if w[0].is_zero() { w[1].is_zero() } else { (&w[1] % &w[0]).is_zero() };
            ensure(ok, format!("case {case}: chain broken at {w:?}"))?;
        }
        let wide = dense(&m);
        let mut prefix = BigInt::one();
        for k in 1..=r.min(c) {
            prefix *= &diag[k - 1];
            ensure(determinantal(&wide, k) == prefix, format!("case {case}: d_{k} mismatch"))?;
        }
    }
    Ok("500 matrices, 0 failures".into())
}

fn criterion_10() -> Outcome {
    let start = Instant::now();
    let out = Command::new(env!("CARGO_BIN_EXE_pickernel"))
        .args(["--suite", "paper"])
        .output()
        .map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    let stdout = String::from_utf8_lossy(&out.stdout);
    ensure(out.status.code() == Some(0), format!("exit {:?}: {stdout}", out.status.code()))?;
    let passes = stdout.lines().filter(|l| l.contains(" PASS ")).count();
    ensure(passes == 9, format!("{passes} criteria passed"))?;
    ensure(elapsed < Duration::from_secs(300), format!("took {elapsed:?}"))?;
    Ok(format!("exit 0, 9/9 lines pass in {:.2} s", elapsed.as_secs_f64()))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("group ring Picard groups equal abelianizations", criterion_1),
        ("circle descent kernel", criterion_2),
        ("free-module vanishing", criterion_3),
        ("annihilation by |G|", criterion_4),
        ("cyclic oracle equivalence", criterion_5),
        ("exactness suites", criterion_6),
        ("conductor-square torsion", criterion_7),
        ("inseparable suite", criterion_8),
        ("Smith normal form properties", criterion_9),
        ("suite command", criterion_10),
    ];
    let mut failed = 0;
    for (i, (title, f)) in criteria.iter().enumerate() {
        let outcome = std::panic::catch_unwind(f).unwrap_or_else(|_| Err("panicked".into()));
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS  {title}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {title}: {why}", i + 1);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
