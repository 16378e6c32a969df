//! Acceptance suite: one PASS/FAIL line per criterion. Runs without the test
//! harness so the lines always print.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;
use skewci::manifest::{compile, Compiled};
use skewci::{parse_manifest, run_manifest, Manifest, Overrides};
use skewci_core::coeff::{Field, RatFunc, Rational};
use skewci_core::freealg::{parse_homogeneous, MonomialOrder, MultiPoly, NCPoly, Word};
use skewci_core::geometry::{annihilates, search_annihilated_point, verify_family, ProbeOptions};
use skewci_core::rewrite::{complete_truncated, hilbert_function, Presentation};
use skewci_core::skew::{matrix_of_quadric, quadric_of_matrix, validate_mu, MuData, MuSymMatrix};

const CLIFFORD3_PIPELINE_LIMIT: Duration = Duration::from_secs(5);
const FOURTH_POWERS_LIMIT: Duration = Duration::from_secs(30);
const NORMAL_FORM_CASES: usize = 1000;
const HILBERT_ORACLE_DEGREE: usize = 5;
const ROUNDTRIP_CASES: usize = 100;
const RESCALING_CASES: usize = 20;
/// Base-point oracle: degrees of the commutative quotient examined.
const BASE_POINT_ORACLE_DEGREE: usize = 4;

type P = NCPoly<Rational>;
type Check = Result<String, String>;

fn q(v: i64) -> Rational {
    Rational::integer(v)
}

fn load(name: &str) -> (String, Manifest) {
    let path = format!("{}/manifests/{name}", env!("CARGO_MANIFEST_DIR"));
    let text = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{path}: {e}"));
    let m = parse_manifest(&text).unwrap_or_else(|e| panic!("{path}: {e}"));
    (text, m)
}

fn compiled(name: &str) -> Compiled<Rational> {
    let (_, m) = load(name);
    let qv = m.q.as_ref().map(|s| {
        skewci_core::freealg::parse_scalar(&s.to_string())
            .unwrap()
            .to_rational()
            .unwrap()
    });
    match qv {
        Some(v) => compile::<Rational>(&m, &|c: &RatFunc| c.eval(&v)).unwrap(),
        None => compile::<Rational>(&m, &|c: &RatFunc| c.to_rational()).unwrap(),
    }
}

fn report(name: &str) -> (Value, Duration) {
    let (text, m) = load(name);
    let t = Instant::now();
    let out = run_manifest(&m, &text, &Overrides::default()).unwrap();
    (out.report, t.elapsed())
}

fn result<'a>(r: &'a Value, command: &str) -> Result<&'a Value, String> {
    let v = r["results"]
        .as_array()
        .and_then(|a| a.iter().find(|x| x["command"] == command))
        .ok_or(format!("no {command} result"))?;
    match v.get("error") {
        Some(e) => Err(format!("{command}: {e}")),
        None => Ok(v),
    }
}

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn parse(exprs: &[&str], names: &[String]) -> Vec<P> {
    exprs
        .iter()
        .map(|s| {
            parse_homogeneous(s, names)
                .unwrap()
                .map_coeffs(|c| c.to_rational().ok_or(()))
                .unwrap()
        })
        .collect()
}

/// Scales to make the leading coefficient under `order` one.
fn monic(f: &P, order: &MonomialOrder) -> P {
    let (_, c) = f
        .terms()
        .max_by(|(u, _), (v, _)| order.compare(u, v))
        .expect("nonzero");
    f.scale(&c.inv().unwrap())
}

fn same_up_to_scalar(a: &[P], b: &[P], order: &MonomialOrder) -> bool {
    let norm = |v: &[P]| {
        let mut out: Vec<String> = v.iter().map(|f| format!("{:?}", monic(f, order))).collect();
        out.sort();
        out
    };
    norm(a) == norm(b)
}

// ---- independent oracles ----

fn all_words(n: usize, m: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for _ in 0..m {
        out = out
            .into_iter()
            .flat_map(|w: Vec<usize>| {
                (0..n).map(move |i| {
                    let mut v = w.clone();
                    v.push(i);
                    v
                })
            })
            .collect();
    }
    out
}

/// Sparse exact row reduction; returns the rank.
fn sparse_rank(rows: impl IntoIterator<Item = BTreeMap<usize, Rational>>) -> usize {
    let mut pivots: BTreeMap<usize, BTreeMap<usize, Rational>> = BTreeMap::new();
    for mut row in rows {
        loop {
            row.retain(|_, c| !c.is_zero());
            let Some((&lead, c)) = row.iter().next() else {
                break;
            };
            let Some(p) = pivots.get(&lead) else {
                let inv = c.inv().unwrap();
                let norm = row.iter().map(|(&k, v)| (k, v.mul(&inv))).collect();
                pivots.insert(lead, norm);
                break;
            };
            let f = c.clone();
            for (&k, v) in p {
                let e = row.entry(k).or_insert_with(Rational::zero);
                *e = e.sub(&f.mul(v));
            }
        }
    }
    pivots.len()
}

/// `dim (free / ideal)_m` from the span of `u r v`.
fn hilbert_oracle(p: &Presentation<Rational>, m: usize) -> usize {
    let n = p.n();
    let words = all_words(n, m);
    let index: BTreeMap<Vec<usize>, usize> = words
        .iter()
        .cloned()
        .enumerate()
        .map(|(i, w)| (w, i))
        .collect();
    let mut rows = Vec::new();
    for r in p.relations() {
        let d = r.max_degree();
        if d > m {
            continue;
        }
        for a in 0..=m - d {
            for u in all_words(n, a) {
                for v in all_words(n, m - d - a) {
                    let mut row = BTreeMap::new();
                    for (w, c) in r.terms() {
                        let mut full = u.clone();
                        full.extend(w.letters().iter().map(|&x| x as usize));
                        full.extend(&v);
                        let e = row.entry(index[&full]).or_insert_with(Rational::zero);
                        *e = e.add(c);
                    }
                    rows.push(row);
                }
            }
        }
    }
    words.len() - sparse_rank(rows)
}

/// Commutative monomials of degree `m` in `n` variables as exponent vectors.
fn comm_monomials(n: usize, m: usize) -> Vec<Vec<u32>> {
    if n == 1 {
        return vec![vec![m as u32]];
    }
    (0..=m)
        .rev()
        .flat_map(|k| {
            comm_monomials(n - 1, m - k)
                .into_iter()
                .map(move |mut rest| {
                    rest.insert(0, k as u32);
                    rest
                })
        })
        .collect()
}

/// Quotient dimensions of `k[z]/(quadrics)` in degrees `0..=top`, by monomial
/// linear algebra.
fn commutative_quotient_dims(n: usize, quadrics: &[P], top: usize) -> Vec<usize> {
    let exps = |w: &Word| {
        let mut e = vec![0u32; n];
        for &l in w.letters() {
            e[l as usize] += 1;
        }
        e
    };
    (0..=top)
        .map(|m| {
            let mons = comm_monomials(n, m);
            if m < 2 {
                return mons.len();
            }
            let index: BTreeMap<Vec<u32>, usize> = mons
                .iter()
                .cloned()
                .enumerate()
                .map(|(i, e)| (e, i))
                .collect();
            let mut rows = Vec::new();
            for f in quadrics {
                for mult in comm_monomials(n, m - 2) {
                    let mut row = BTreeMap::new();
                    for (w, c) in f.terms() {
                        let e: Vec<u32> = exps(w).iter().zip(&mult).map(|(a, b)| a + b).collect();
                        let slot = row.entry(index[&e]).or_insert_with(Rational::zero);
                        *slot = slot.add(c);
                    }
                    rows.push(row);
                }
            }
            mons.len() - sparse_rank(rows)
        })
        .collect()
}

fn binomial(n: u64, k: u64) -> u64 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

// ---- criteria ----

fn criterion_1() -> Check {
    let name = "clifford3_regular.toml";
    let (r, elapsed) = report(name);
    let c = compiled(name);
    let input = c.gsca.as_ref().ok_or("no matrices")?;
    let order = c.order.clone();
    let names = c.names.clone();

    let e = skewci_core::gsca::eliminate_y(input, names.clone()).map_err(|e| e.to_string())?;
    let expected = parse(
        &["x1*x2 + x2*x1 - x3^2", "x1*x3 + x3*x1", "x2*x3 + x3*x2"],
        &names,
    );
    ensure(
        same_up_to_scalar(e.presentation.relations(), &expected, &order),
        "eliminated relations differ",
    )?;

    let z: Vec<String> = (1..=3).map(|i| format!("z{i}")).collect();
    let quads = input.quadric_system().quadrics().to_vec();
    let zexp = parse(&["z1^2", "z2^2", "z1*z2 + z3^2"], &z);
    ensure(
        same_up_to_scalar(&quads, &zexp, &MonomialOrder::natural(3)),
        "quadric system differs",
    )?;

    let dims = commutative_quotient_dims(3, &quads, BASE_POINT_ORACLE_DEGREE);
    ensure(
        dims[BASE_POINT_ORACLE_DEGREE] == 0,
        format!("oracle quotient not finite: {dims:?}"),
    )?;
    let oracle_dim: usize = dims.iter().sum();

    let cert = result(&r, "certify-regular")?;
    ensure(
        cert["base_point_free"]["verdict"] == "free",
        "base point found",
    )?;
    ensure(
        cert["base_point_free"]["dimension"] == oracle_dim,
        format!(
            "dimension {} vs oracle {oracle_dim}",
            cert["base_point_free"]["dimension"]
        ),
    )?;
    ensure(
        cert["conclusion"]["status"] == "certified-regular",
        "not certified regular",
    )?;
    ensure(cert["hilbert_match"] == true, "hilbert mismatch")?;
    let h: Vec<u64> = serde_json::from_value(cert["hilbert"].clone()).unwrap();
    ensure(h.starts_with(&[1, 3, 6, 10, 15]), format!("hilbert {h:?}"))?;
    ensure(
        r["settings"]["max_degree"].as_u64() >= Some(12),
        "truncation below 12",
    )?;
    ensure(
        elapsed < CLIFFORD3_PIPELINE_LIMIT,
        format!("took {elapsed:?}"),
    )?;
    Ok(format!(
        "relations, quadrics, free of dim {oracle_dim} (oracle), regular; {elapsed:.2?}"
    ))
}

fn criterion_2() -> Check {
    let (r, elapsed) = report("clifford3_fourth_powers.toml");
    ensure(r["settings"]["max_degree"] == 12, "truncation is not 12")?;
    let c = result(&r, "conditions")?;
    ensure(c["I"]["status"] == "fails", "I does not fail")?;
    ensure(
        c["I"]["witness"]["stage"] == 3,
        format!("I witness {}", c["I"]["witness"]),
    )?;
    ensure(c["II"]["status"] == "fails", "II does not fail")?;
    ensure(
        c["III"]["status"] == "fails" && c["III"]["exact"] == true,
        "III not an exact failure",
    )?;
    let last = &c["III"]["prefixes"][2];
    ensure(
        last["gk"] == 1 && last["certified"] == true,
        format!("GK {last}"),
    )?;
    ensure(
        c["II"]["growth"]["kind"] == "polynomial" && c["II"]["growth"]["gk"] == 1,
        "growth is not GK 1",
    )?;
    ensure(
        c["IV"]["status"] == "holds" && c["IV"]["exact"] == true && c["IV"]["method"] == "families",
        format!("IV {}", c["IV"]),
    )?;
    ensure(c["verdict"] == "not-complete-intersection", "verdict")?;
    ensure(
        r["alarms"].as_array().is_some_and(Vec::is_empty),
        "alarm raised",
    )?;
    ensure(elapsed < FOURTH_POWERS_LIMIT, format!("took {elapsed:?}"))?;
    Ok(format!(
        "I/II/III fail, GK 1, IV holds on exhaustive families; {elapsed:.2?}"
    ))
}

fn criterion_3() -> Check {
    let name = "clifford3_squares.toml";
    let (r, _) = report(name);
    let c = result(&r, "conditions")?;
    for k in ["I", "II", "III", "IV"] {
        ensure(
            c[k]["status"] == "holds",
            format!("{k} = {}", c[k]["status"]),
        )?;
    }
    ensure(c["II"]["growth"]["dimension"] == 8, "dimension is not 8")?;
    ensure(c["verdict"] == "complete-intersection", "verdict")?;

    let cp = compiled(name);
    let d = r["settings"]["max_degree"]
        .as_u64()
        .ok_or("no truncation")? as usize;
    let a = cp.presentation.as_ref().map_err(Clone::clone)?;
    let ha = hilbert_function(&complete_truncated(a, d, &cp.order).unwrap(), d)
        .unwrap()
        .values;
    let mut rels = a.relations().to_vec();
    rels.extend(cp.sequence.iter().cloned());
    let quot = Presentation::new(cp.names.clone(), rels).unwrap();
    let hq = hilbert_function(&complete_truncated(&quot, d, &cp.order).unwrap(), d)
        .unwrap()
        .values;
    // (1 - t^2)^3 = 1 - 3t^2 + 3t^4 - t^6
    let factor: [(usize, i64); 4] = [(0, 1), (2, -3), (4, 3), (6, -1)];
    for m in 0..=d {
        let lhs: i64 = factor
            .iter()
            .filter(|(s, _)| *s <= m)
            .map(|(s, c)| c * ha[m - s] as i64)
            .sum();
        ensure(
            lhs == hq[m] as i64,
            format!("factorization fails in degree {m}: {lhs} vs {}", hq[m]),
        )?;
    }
    Ok(format!(
        "I-IV hold, dim 8, H_A(1-t^2)^3 = H_quotient through degree {d}"
    ))
}

fn quantum_checks(name: &str) -> Result<(), String> {
    let (r, _) = report(name);
    let h: Vec<u64> = serde_json::from_value(result(&r, "hilbert")?["values"].clone()).unwrap();
    ensure(h.len() > 8, "hilbert shorter than degree 8")?;
    for (m, v) in h.iter().enumerate() {
        ensure(
            *v == binomial(m as u64 + 3, 3),
            format!("{name}: degree {m} has {v}"),
        )?;
    }
    ensure(
        result(&r, "normalizing")?["normalizing"] == true,
        "sequence not normalizing",
    )?;
    let c = result(&r, "conditions")?;
    for k in ["I", "II", "III", "IV"] {
        ensure(
            c[k]["status"] == "fails",
            format!("{name}: {k} = {}", c[k]["status"]),
        )?;
    }
    ensure(c["verdict"] == "not-complete-intersection", "verdict")?;
    ensure(
        r["alarms"].as_array().is_some_and(Vec::is_empty),
        "alarm raised",
    )?;
    Ok(())
}

fn criterion_4() -> Check {
    quantum_checks("quantum_matrices_q3.toml")?;
    quantum_checks("quantum_matrices_generic.toml")?;

    let c = compiled("quantum_matrices_q3.toml");
    let p = c.presentation.as_ref().map_err(Clone::clone)?;
    let w = search_annihilated_point(p, &c.sequence, None, &ProbeOptions::default())
        .ok_or("no witness")?;
    let mut conds = p.relations().to_vec();
    conds.extend(c.sequence.iter().cloned());
    ensure(w.satisfies(&conds), "witness fails exact verification")?;
    let e1 = vec![q(1), q(0), q(0), q(0)];
    ensure(
        w.points.iter().all(|x| *x == e1),
        format!("witness {:?}", w.points),
    )?;

    let (_, m) = load("quantum_matrices_generic.toml");
    let g = compile::<RatFunc>(&m, &|c: &RatFunc| Some(c.clone())).unwrap();
    let gp = g.presentation.as_ref().map_err(Clone::clone)?;
    let gw = search_annihilated_point(gp, &g.sequence, None, &ProbeOptions::default())
        .ok_or("no generic witness")?;
    let mut gconds = gp.relations().to_vec();
    gconds.extend(g.sequence.iter().cloned());
    ensure(
        gw.satisfies(&gconds),
        "generic witness fails exact verification",
    )?;
    let ge1 = vec![
        RatFunc::one(),
        RatFunc::zero(),
        RatFunc::zero(),
        RatFunc::zero(),
    ];
    ensure(
        gw.points.iter().all(|x| *x == ge1),
        "generic witness is not (1,0,0,0)",
    )?;
    Ok("q = 3 and Q(q): H = 1/(1-t)^4, normalizing, I-IV fail, witness (1,0,0,0) verified".into())
}

fn criterion_5() -> Check {
    let (r, _) = report("clifford2.toml");
    let b = result(&r, "base-point-free")?;
    ensure(b["verdict"] == "not-free", "no base point")?;
    let w: Vec<Vec<String>> =
        serde_json::from_value(b["witness"].clone()).map_err(|e| e.to_string())?;
    let proj_one = |p: &[String]| p.len() == 2 && p[0] == p[1] && p[0] != "0";
    ensure(
        w.len() == 2 && w.iter().all(|p| proj_one(p)),
        format!("witness {w:?}"),
    )?;
    let nf = &result(&r, "normal-form")?["reductions"][0];
    ensure(
        nf["normal_form"] == "0",
        format!("(x+y)^2 -> {}", nf["normal_form"]),
    )?;
    let h = result(&r, "hilbert")?;
    let vals: Vec<u64> = serde_json::from_value(h["values"].clone()).unwrap();
    ensure(
        vals.iter().enumerate().all(|(m, v)| *v == m as u64 + 1),
        format!("hilbert {vals:?}"),
    )?;
    ensure(
        h["max_rule_degree"].as_u64() >= Some(3),
        "no rule of degree 3",
    )?;
    ensure(
        h["quadratic_through_truncation"] == false,
        "reported quadratic",
    )?;
    let c = result(&r, "conditions")?;
    for k in ["I", "II", "III"] {
        ensure(
            c[k]["status"] == "holds",
            format!("{k} = {}", c[k]["status"]),
        )?;
    }
    ensure(c["II"]["growth"]["dimension"] == 4, "dimension is not 4")?;
    Ok(
        "base point (1,1),(1,1), (x+y)^2 = 0, H = 1/(1-t)^2, cubic rule, I-III hold with dim 4"
            .into(),
    )
}

fn bundled_names() -> Vec<String> {
    let dir = concat!(env!("CARGO_MANIFEST_DIR"), "/manifests");
    let mut v: Vec<String> = std::fs::read_dir(dir)
        .unwrap()
        .map(|e| e.unwrap().file_name().to_string_lossy().into_owned())
        .filter(|n| n.ends_with(".toml"))
        .collect();
    v.sort();
    v
}

fn random_poly(rng: &mut ChaCha8Rng, n: usize, max_len: usize) -> P {
    let k = rng.random_range(0..5);
    P::from_terms((0..k).map(|_| {
        let len = rng.random_range(0..=max_len);
        let w: Vec<usize> = (0..len).map(|_| rng.random_range(0..n)).collect();
        (Word::from_letters(&w), q(rng.random_range(-3..=3)))
    }))
}

fn order_axioms() -> Result<(), String> {
    let words: Vec<Word> = (0..=3)
        .flat_map(|m| all_words(3, m))
        .map(|w| Word::from_letters(&w))
        .collect();
    let precs = [
        [0, 1, 2],
        [0, 2, 1],
        [1, 0, 2],
        [1, 2, 0],
        [2, 0, 1],
        [2, 1, 0],
    ];
    for prec in precs {
        let o = MonomialOrder::from_precedence(&prec).unwrap();
        for u in &words {
            for v in &words {
                let c = o.compare(u, v);
                ensure(c == o.compare(v, u).reverse(), "antisymmetry")?;
                ensure((c == Ordering::Equal) == (u == v), "totality")?;
                if u.len() < v.len() {
                    ensure(c == Ordering::Less, "degree compatibility")?;
                }
                let x = Word::from_letters(&[prec[0]]);
                ensure(
                    o.compare(&x.concat(u).concat(&x), &x.concat(v).concat(&x)) == c,
                    "multiplicativity",
                )?;
                for w in words.iter().step_by(7) {
                    if c == Ordering::Less && o.compare(v, w) == Ordering::Less {
                        ensure(o.compare(u, w) == Ordering::Less, "transitivity")?;
                    }
                }
            }
        }
    }
    Ok(())
}

fn normal_forms(c: &Compiled<Rational>, seed: u64) -> Result<(), String> {
    let p = c.presentation.as_ref().map_err(Clone::clone)?;
    let rs = complete_truncated(p, 9, &c.order).map_err(|e| e.to_string())?;
    let n = p.n();
    let rels = p.relations();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..NORMAL_FORM_CASES {
        let f = random_poly(&mut rng, n, 4);
        let nf = rs.normal_form(&f).map_err(|e| e.to_string())?;
        ensure(
            rs.normal_form(&nf).unwrap() == nf,
            "normal form not idempotent",
        )?;
        ensure(
            nf.terms().all(|(w, _)| rs.is_normal_word(w)),
            "reducible word in normal form",
        )?;
        let mut h = P::zero();
        for _ in 0..rng.random_range(0..4) {
            let (u, v) = (random_poly(&mut rng, n, 2), random_poly(&mut rng, n, 2));
            h = h.add(&u.mul(&rels[rng.random_range(0..rels.len())]).mul(&v));
        }
        ensure(
            rs.normal_form(&h).unwrap().is_zero(),
            "ideal element with nonzero normal form",
        )?;
        ensure(
            rs.normal_form(&f.add(&h)).unwrap() == nf,
            "normal form not constant on cosets",
        )?;
    }
    Ok(())
}

fn random_mu(rng: &mut ChaCha8Rng, n: usize) -> MuData<Rational> {
    let mut m = vec![vec![q(1); n]; n];
    for i in 0..n {
        for j in i + 1..n {
            let x = Rational::new(
                rng.random_range(1..=3) * if rng.random() { -1 } else { 1 },
                rng.random_range(1..=3),
            )
            .unwrap();
            m[j][i] = x.inv().unwrap();
            m[i][j] = x;
        }
    }
    validate_mu(m).unwrap()
}

fn quadric_roundtrip() -> Result<(), String> {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..ROUNDTRIP_CASES {
        let n = rng.random_range(1..=4);
        let mu = random_mu(&mut rng, n);
        let mut m = vec![vec![q(0); n]; n];
        for i in 0..n {
            m[i][i] = q(rng.random_range(-3..=3));
            for j in i + 1..n {
                m[i][j] = q(rng.random_range(-3..=3));
                m[j][i] = mu.get(j, i).mul(&m[i][j]);
            }
        }
        let m = MuSymMatrix::new(m, &mu).map_err(|e| e.to_string())?;
        let quad = quadric_of_matrix(&m, &mu);
        let back = matrix_of_quadric(&quad, &mu).map_err(|e| e.to_string())?;
        ensure(
            quadric_of_matrix(&back, &mu) == quad,
            "quadric -> matrix -> quadric changed",
        )?;
        let (a, b): (Vec<Rational>, Vec<Rational>) = (m.rows().concat(), back.rows().concat());
        let ratio = a
            .iter()
            .zip(&b)
            .find(|(x, _)| !x.is_zero())
            .map(|(x, y)| y.div(x).unwrap());
        match ratio {
            None => ensure(
                b.iter().all(Rational::is_zero),
                "zero matrix came back nonzero",
            )?,
            Some(s) => ensure(
                a.iter().zip(&b).all(|(x, y)| x.mul(&s) == *y),
                "matrix not recovered up to scalar",
            )?,
        }
    }
    Ok(())
}

fn rescaling_invariance() -> Result<(), String> {
    let c = compiled("clifford3_fourth_powers.toml");
    let p = c.presentation.as_ref().map_err(Clone::clone)?;
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let form = |e: [u32; 2], v: i64| {
        let mut m = MultiPoly::zero(2);
        m.add_term(e.to_vec(), &q(v));
        m
    };
    for fam in &c.families {
        let base = verify_family(fam, p).map_err(|e| e.to_string())?.is_none();
        let ann = annihilates(fam, &c.sequence, None);
        for _ in 0..RESCALING_CASES {
            let slot = rng.random_range(0..fam.period());
            let factor = match rng.random_range(0..3) {
                0 => form([0, 0], rng.random_range(1..=5)),
                1 => form([1, 0], 1).add(&form([0, 1], rng.random_range(1..=5))),
                _ => form([0, 1], -rng.random_range(1..=5)),
            };
            let g = fam.rescaled(slot, &factor);
            ensure(
                verify_family(&g, p).unwrap().is_none() == base,
                "verify_family changed under rescaling",
            )?;
            ensure(
                annihilates(&g, &c.sequence, None) == ann,
                "annihilation changed under rescaling",
            )?;
        }
    }
    Ok(())
}

fn criterion_6() -> Check {
    order_axioms().map_err(|e| format!("order axioms: {e}"))?;
    let presentations = [
        "clifford3_regular.toml",
        "quantum_matrices_q3.toml",
        "clifford2.toml",
        "skew3_squares.toml",
    ];
    for (k, name) in presentations.iter().enumerate() {
        let c = compiled(name);
        normal_forms(&c, k as u64 + 1).map_err(|e| format!("{name}: {e}"))?;
        let p = c.presentation.as_ref().map_err(Clone::clone)?;
        let rs = complete_truncated(p, 10, &c.order).unwrap();
        let h = hilbert_function(&rs, HILBERT_ORACLE_DEGREE).unwrap().values;
        for m in 0..=HILBERT_ORACLE_DEGREE {
            let o = hilbert_oracle(p, m);
            ensure(
                h[m] as usize == o,
                format!("{name}: degree {m} has {} vs oracle {o}", h[m]),
            )?;
        }
    }
    quadric_roundtrip().map_err(|e| format!("roundtrip: {e}"))?;
    rescaling_invariance().map_err(|e| format!("rescaling: {e}"))?;
    for name in bundled_names() {
        let (r, _) = report(&name);
        ensure(
            r["alarms"].as_array().is_some_and(Vec::is_empty),
            format!("{name}: alarm {}", r["alarms"]),
        )?;
    }
    Ok(format!(
        "orders, {NORMAL_FORM_CASES} normal forms x4, Hilbert oracle to degree {HILBERT_ORACLE_DEGREE}, \
         {ROUNDTRIP_CASES} roundtrips, rescaling, no alarms"
    ))
}

fn criterion_7() -> Check {
    let names = bundled_names();
    for name in &names {
        let (text, m) = load(name);
        let ov = Overrides {
            seed: Some(17),
            ..Overrides::default()
        };
        let a =
            serde_json::to_string_pretty(&run_manifest(&m, &text, &ov).unwrap().report).unwrap();
        let b =
            serde_json::to_string_pretty(&run_manifest(&m, &text, &ov).unwrap().report).unwrap();
        ensure(a == b, format!("{name}: reports differ"))?;
    }
    Ok(format!(
        "{} manifests byte-identical across two runs",
        names.len()
    ))
}

fn main() {
    let criteria: [(&str, fn() -> Check); 7] = [
        (
            "three-generator Clifford algebra from matrices",
            criterion_1,
        ),
        ("fourth powers are not a complete intersection", criterion_2),
        ("squares form a complete intersection", criterion_3),
        ("quantum matrices", criterion_4),
        ("two-generator Clifford algebra", criterion_5),
        ("property suites", criterion_6),
        ("determinism", criterion_7),
    ];
    let mut failed = 0;
    for (k, (title, f)) in criteria.iter().enumerate() {
        let t = Instant::now();
        match f() {
            Ok(detail) => println!("PASS {} {title}: {detail} [{:.2?}]", k + 1, t.elapsed()),
            Err(why) => {
                failed += 1;
                println!("FAIL {} {title}: {why}", k + 1);
            }
        }
    }
    if failed > 0 {
        eprintln!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
}
