//! Acceptance criteria 1–11: one PASS/FAIL line each; exits non-zero if any fail.

use std::collections::{BTreeMap, HashMap};
use std::panic::{self, AssertUnwindSafe};
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use leafalg::coinv::{coinvariants_truncated, product_with_fields, verify_hp0, Family};
use leafalg::geom::{degenerate_locus, hp0_series, jacobian_bracket_matrix, leaves_check, milnor_number, tjurina};
use leafalg::groebner::quotient_dimension;
use leafalg::linalg::{Echelon, SparseRow};
use leafalg::poly::{monomials_of_total_degree, monomials_of_weight, rational};
use leafalg::sympower::sym_power_series;
use leafalg::vfields::{derivations_up_to_degree, exceptional_ideal, hamiltonian_family_top, JacobiStructure, VectorField};
use leafalg::{Colength, GroebnerBasis, Monomial, PolyRing, Polynomial, Structure, Variety};

fn data(name: &str) -> String {
    format!("{}/tests/data/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn cli(args: &[&str]) -> (i32, String) {
    let out = leafalg_cli::run(std::iter::once("leafalg").chain(args.iter().copied()));
    (out.code, out.stdout.trim_end().to_string())
}

fn ring(vars: &[&str], weights: &[u32]) -> Arc<PolyRing> {
    PolyRing::new(vars, weights).unwrap()
}

fn jacobian(r: &Arc<PolyRing>, eqs: &[&str]) -> Variety {
    Variety::parse(r, eqs, Structure::Jacobian).unwrap()
}

fn check(ok: bool, detail: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(detail.into())
    }
}

fn criterion_1() -> Result<(), String> {
    let f = data("fermat.json");
    for (a, b, want) in [("x", "y", "3*z^2"), ("y", "z", "3*x^2"), ("z", "x", "3*y^2")] {
        let (code, out) = cli(&["bracket", "-i", &f, "-f", a, "-g", b]);
        check(code == 0 && out == want, format!("{{{a},{b}}} = {out:?}, expected {want}"))?;
    }
    Ok(())
}

fn criterion_2() -> Result<(), String> {
    let r = ring(&["x", "y"], &[1, 1]);
    let q = r.parse("x^3 + x^2*y + y^4").unwrap();
    let (qx, qy) = (q.derivative(0), q.derivative(1));
    let y4 = r.parse("y^4").unwrap();
    let with_q = GroebnerBasis::new(&r, &[q.clone(), qx.clone(), qy.clone()]).unwrap();
    let without = GroebnerBasis::new(&r, &[qx, qy]).unwrap();
    check(with_q.contains(&y4), "y^4 not in (Q, Q_x, Q_y)")?;
    check(!without.contains(&y4), "y^4 in (Q_x, Q_y)")
}

fn criterion_3() -> Result<(), String> {
    let r = ring(&["x", "y"], &[3, 2]);
    let x = jacobian(&r, &["x^2 - y^3"]);
    let s = hp0_series(&x).map_err(|e| e.to_string())?;
    check(s.to_string() == "1 + u^2" && s.at_one() == Some(2), format!("hp0 = {s}"))?;
    let t = coinvariants_truncated(&x, &Family::Hamiltonian, 10).map_err(|e| e.to_string())?;
    for w in 0..=10 {
        check(t.dim(w) as i64 == s.coefficient(w), format!("weight {w}: oracle {} vs {}", t.dim(w), s.coefficient(w)))?;
    }
    let all = coinvariants_truncated(&x, &Family::Derivations, 10).map_err(|e| e.to_string())?;
    check(all.total() == 1, format!("Vect coinvariants total {}", all.total()))?;
    let ders = derivations_up_to_degree(x.gb(), 10).map_err(|e| e.to_string())?;
    let ex = exceptional_ideal(&ders, x.gb()).map_err(|e| e.to_string())?;
    check(quotient_dimension(&ex) == Some(1), format!("O/exceptional ideal {ex}"))
}

fn criterion_4() -> Result<(), String> {
    let r = ring(&["x", "y", "z"], &[1, 1, 1]);
    let x = jacobian(&r, &["x^3 + y^3 + z^3"]);
    let rep = tjurina(&x).map_err(|e| e.to_string())?;
    check(rep.milnor == 8 && rep.tjurina == 8, format!("mu = {}, tau = {}", rep.milnor, rep.tjurina))?;
    let s = hp0_series(&x).map_err(|e| e.to_string())?;
    check(s.to_string() == "1 + 3*u + 3*u^2 + u^3", format!("hp0 = {s}"))?;
    let v = verify_hp0(&x, 3).map_err(|e| e.to_string())?;
    check(v.is_match() && v.table.max_degree == 6, v.to_string())
}

fn criterion_5() -> Result<(), String> {
    let r = ring(&["x", "y", "z"], &[1, 1, 1]);
    let x = jacobian(&r, &["x^2 + y^2 + z^2", "x^2 + 2*y^2 + 3*z^2"]);
    let mu = milnor_number(&x).map_err(|e| e.to_string())?;
    check(mu == Colength::Finite(5), format!("mu = {mu}"))
}

fn criterion_6() -> Result<(), String> {
    let (code, out) = cli(&["leaves", "-i", &data("plane-xdxdy.json")]);
    check(
        code == 0 && out == "FAIL: stratum i=0 ideal (x) has dimension 1 > 0",
        format!("plane: {out:?}"),
    )?;
    let r = ring(&["x", "y", "z"], &[1, 1, 1]);
    let x = jacobian(&r, &["x^3 + y^3 + z^3"]);
    let pi = jacobian_bracket_matrix(&x).map_err(|e| e.to_string())?;
    let x = x.with_structure(Structure::Bracket(pi)).map_err(|e| e.to_string())?;
    let v = leaves_check(&x, 2).map_err(|e| e.to_string())?;
    check(v.passed(), format!("Fermat bracket: {v}"))
}

fn criterion_7() -> Result<(), String> {
    let j = JacobiStructure::standard_contact(1).map_err(|e| e.to_string())?;
    let r = j.ring().clone();
    let field = |s: &[&str]| VectorField::parse(&r, s).unwrap();
    let mut wrong = Vec::new();
    for (f, want) in [("t", field(&["-x", "0", "0"])), ("1", field(&["0", "0", "1"])), ("y", field(&["1", "0", "0"]))] {
        let got = j.hamiltonian(&r.parse(f).unwrap());
        if got != want {
            wrong.push(format!("xi_{f} = {got}, expected {want}"));
        }
    }
    check(wrong.is_empty(), wrong.join("; "))
}

fn criterion_8() -> Result<(), String> {
    let s = sym_power_series(&BTreeMap::from([(0, 1)]), 0, 3).map_err(|e| e.to_string())?;
    check(s.coefficient(3, 0) == 3, format!("s^3 coefficient {}", s.coefficient(3, 0)))?;
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for _ in 0..10 {
        let p: BTreeMap<i64, i64> = (0..rng.gen_range(1..5)).map(|_| (rng.gen_range(0..8), rng.gen_range(1..4))).collect();
        let d = rng.gen_range(0..7);
        let layer = sym_power_series(&p, d, 3).map_err(|e| e.to_string())?.layer(1);
        let want: BTreeMap<i64, u128> = p.iter().map(|(&e, &c)| (e - d, c as u128)).collect();
        check(layer == want, format!("p = {p:?}, d = {d}: s^1 layer {layer:?}"))?;
    }
    Ok(())
}

fn criterion_9() -> Result<(), String> {
    let r = ring(&["x", "y", "z"], &[1, 1, 1]);
    let d = degenerate_locus(&jacobian(&r, &["x^3 + y^3 + z^3"])).map_err(|e| e.to_string())?;
    check(d.is_finite(), format!("Fermat: dimension {}", d.dimension))?;
    let r = ring(&["x", "y"], &[1, 1]);
    let d = degenerate_locus(&jacobian(&r, &["x^2*y"])).map_err(|e| e.to_string())?;
    check(!d.is_finite() && d.dimension == 1, format!("x^2 y: dimension {}", d.dimension))
}

fn random_homogeneous(rng: &mut ChaCha8Rng, r: &Arc<PolyRing>, degree: u64) -> Polynomial {
    loop {
        let mut terms = Vec::new();
        for m in monomials_of_total_degree(r.arity(), degree) {
            if rng.gen_bool(0.5) {
                terms.push((m, rational(rng.gen_range(-3..=3))));
            }
        }
        let p = Polynomial::from_terms(r, terms);
        if !p.is_zero() {
            return p;
        }
    }
}

fn random_poly(rng: &mut ChaCha8Rng, r: &Arc<PolyRing>, terms: usize, max_exp: u32) -> Polynomial {
    let terms = (0..terms).map(|_| {
        let e = (0..r.arity()).map(|_| rng.gen_range(0..=max_exp)).collect();
        (Monomial::from_exponents(e), rational(rng.gen_range(-4..=4)))
    });
    Polynomial::from_terms(r, terms)
}

/// `p ∈ span{m g_i : deg m ≤ bound}`.
fn linear_solve_member(gens: &[Polynomial], p: &Polynomial, bound: u64) -> bool {
    let mut columns: HashMap<Monomial, usize> = HashMap::new();
    let mut row_of = |q: &Polynomial| -> SparseRow {
        let mut row: SparseRow = q
            .terms()
            .iter()
            .map(|(m, c)| {
                let next = columns.len();
                (*columns.entry(m.clone()).or_insert(next), c.clone())
            })
            .collect();
        row.sort_by_key(|(c, _)| *c);
        row
    };
    let mut echelon = Echelon::new();
    for g in gens {
        for d in 0..=bound {
            for m in monomials_of_total_degree(p.ring().arity(), d) {
                let row = row_of(&g.mul_term(&m, &rational(1)));
                echelon.insert(row);
            }
        }
    }
    let target = row_of(p);
    echelon.contains(target)
}

fn criterion_10() -> Result<(), String> {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let r = ring(&["x", "y", "z"], &[1, 1, 1]);
    for k in 0..20 {
        let f = random_homogeneous(&mut rng, &r, 3 + (k % 2));
        let x = Variety::new(&r, vec![f.clone()], Structure::Jacobian).unwrap();
        let pi = jacobian_bracket_matrix(&x).map_err(|e| e.to_string())?;
        let (a, b, c) = (random_poly(&mut rng, &r, 2, 2), random_poly(&mut rng, &r, 2, 2), random_poly(&mut rng, &r, 2, 2));
        let jac = &(&pi.bracket(&a, &pi.bracket(&b, &c)) + &pi.bracket(&b, &pi.bracket(&c, &a))) + &pi.bracket(&c, &pi.bracket(&a, &b));
        check(x.gb().contains(&jac), format!("Jacobi identity fails for f = {f}"))?;
        for xi in hamiltonian_family_top(&x, 2).map_err(|e| e.to_string())? {
            check(xi.tangency_check(x.gb()), format!("{xi} not tangent to {f}"))?;
            check(xi.divergence().is_zero(), format!("{xi} has divergence"))?;
        }
    }
    for _ in 0..50 {
        let weights: Vec<u32> = (0..3).map(|_| rng.gen_range(1..=4)).collect();
        let wr = ring(&["x", "y", "z"], &weights);
        let d = rng.gen_range(1..=10);
        let terms = monomials_of_weight(&weights, d, 0).into_iter().map(|m| (m, rational(rng.gen_range(-5..=5))));
        let f = Polynomial::from_terms(&wr, terms);
        check(VectorField::euler(&wr).apply(&f) == f.scale(&rational(d as i64)), format!("Euler identity fails for {f}"))?;
    }
    let r2 = ring(&["x", "y"], &[1, 1]);
    for _ in 0..20 {
        let gens: Vec<Polynomial> = (0..2).map(|_| random_poly(&mut rng, &r2, 3, 2)).collect();
        let gb = GroebnerBasis::new(&r2, &gens).unwrap();
        let member = &(&gens[0] * &random_poly(&mut rng, &r2, 2, 2)) + &(&gens[1] * &random_poly(&mut rng, &r2, 2, 2));
        check(gb.contains(&member) && linear_solve_member(&gens, &member, 4), "constructed member rejected")?;
        let p = random_poly(&mut rng, &r2, 3, 3);
        if linear_solve_member(&gens, &p, 5) {
            check(gb.contains(&p), format!("{p} has a certificate but normal form is nonzero"))?;
        }
        if !gb.contains(&p) {
            check(!linear_solve_member(&gens, &p, 5), format!("{p} solved but not a member"))?;
        }
    }
    let cusp = jacobian(&ring(&["x", "y"], &[3, 2]), &["x^2 - y^3"]);
    let a1 = jacobian(&ring(&["x", "y"], &[1, 1]), &["x^2 + y^2"]);
    let (p, fields) = product_with_fields(&cusp, &a1, 8).map_err(|e| e.to_string())?;
    let prod = coinvariants_truncated(&p, &Family::Explicit(fields), 8).map_err(|e| e.to_string())?;
    let c = coinvariants_truncated(&cusp, &Family::Hamiltonian, 8).map_err(|e| e.to_string())?;
    let a = coinvariants_truncated(&a1, &Family::Hamiltonian, 8).map_err(|e| e.to_string())?;
    check(prod.dims == c.convolve(&a), format!("product {:?} vs {:?}", prod.dims, c.convolve(&a)))
}

fn criterion_11() -> Result<(), String> {
    let r = ring(&["x", "y", "z", "t"], &[1, 1, 1, 0]);
    let gb = GroebnerBasis::new(&r, &[r.parse("x^3 + y^3 + z^3 + t*x*y*z").unwrap()]).unwrap();
    let ders = derivations_up_to_degree(&gb, 2).map_err(|e| e.to_string())?;
    check(!ders.is_empty(), "no derivations found")?;
    for t0 in [0, 1, -3] {
        let point = [rational(0), rational(0), rational(0), rational(t0)];
        for xi in &ders {
            check(
                xi.evaluate(&point).iter().all(|c| *c == rational(0)),
                format!("{xi} does not vanish at (0,0,0,{t0})"),
            )?;
        }
    }
    Ok(())
}

fn main() {
    let criteria: [(&str, fn() -> Result<(), String>); 11] = [
        ("Fermat Jacobian bracket", criterion_1),
        ("membership of y^4", criterion_2),
        ("cuspidal curve coinvariants", criterion_3),
        ("Fermat cubic mu, tau, hp0", criterion_4),
        ("two-quadric Milnor number", criterion_5),
        ("leaves criterion", criterion_6),
        ("contact Hamiltonian fields", criterion_7),
        ("symmetric-power series", criterion_8),
        ("degenerate-locus finiteness", criterion_9),
        ("property suites", criterion_10),
        ("exceptional family", criterion_11),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let outcome = panic::catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|_| Err("panicked".into()));
        match outcome {
            Ok(()) => println!("criterion {:>2} PASS  {name}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {detail}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
