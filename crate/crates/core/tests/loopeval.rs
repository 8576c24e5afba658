use std::sync::Arc;

use num_traits::Zero;
use superloop_core::exactnum::{frac, int, Scalar, SparseVec};
use superloop_core::loopeval::{
    decompose_loop, detect_period, evaluation_module, loop_module, psi_from, quotient_algebra, IdealSpec, LaurentPoly,
};
use superloop_core::repcore::{irreducible_g, Weight};
use superloop_core::superalg::{build_c, build_sl, SuperAlgebra};

fn sl21() -> Arc<SuperAlgebra> {
    Arc::new(build_sl(2, 1).unwrap())
}

fn w(xs: &[i64]) -> Weight {
    Weight::from_ints(xs)
}

fn ints(xs: &[i64]) -> Vec<Scalar> {
    xs.iter().map(|&x| int(x)).collect()
}

/// Remainder of `t^k` modulo a monic polynomial by repeated substitution of the leading term.
fn naive_power_mod(k: usize, monic: &[i64]) -> Vec<Scalar> {
    let theta = monic.len() - 1;
    let mut coeffs = vec![Scalar::zero(); k + 1];
    coeffs[k] = int(1);
    for top in (theta..=k).rev() {
        let c = coeffs[top].clone();
        if c.is_zero() {
            continue;
        }
        for (i, &p) in monic.iter().enumerate() {
            coeffs[top - theta + i] -= &c * int(p);
        }
    }
    coeffs.resize(theta, Scalar::zero());
    coeffs
}

#[test]
fn ideal_validation_and_coefficients() {
    assert!(IdealSpec::new(ints(&[1, 1]), vec![1, 1]).is_err());
    assert!(IdealSpec::new(ints(&[0]), vec![1]).is_err());
    assert!(IdealSpec::new(vec![], vec![]).is_err());
    let i = IdealSpec::new(ints(&[2, 3]), vec![1, 1]).unwrap();
    assert_eq!(i.theta(), 2);
    assert_eq!(i.coeffs(), ints(&[6, -5, 1]));
    let j = IdealSpec::new(ints(&[1]), vec![2]).unwrap();
    assert_eq!(j.coeffs(), ints(&[1, -2, 1]));
    assert!(!j.is_radical());
    assert_eq!(j.radical().coeffs(), ints(&[-1, 1]));
}

#[test]
fn ideal_json_round_trip() {
    let i: IdealSpec = serde_json::from_str(r#"{"points": ["2","-1/2"], "mults": [1,2]}"#).unwrap();
    assert_eq!(i.points(), &[int(2), frac(-1, 2)]);
    let text = serde_json::to_string(&i).unwrap();
    assert_eq!(text, r#"{"points":["2","-1/2"],"mults":[1,2]}"#);
    assert!(serde_json::from_str::<IdealSpec>(r#"{"points": ["0"], "mults": [1]}"#).is_err());
}

#[test]
fn power_mod_matches_long_division() {
    let i = IdealSpec::new(ints(&[2, 3]), vec![1, 1]).unwrap();
    for k in 0..8 {
        assert_eq!(i.power_mod(k as i64), naive_power_mod(k, &[6, -5, 1]));
    }
    let j = IdealSpec::new(ints(&[1, -2]), vec![2, 1]).unwrap();
    // (t-1)^2 (t+2) = t^3 - 3t + 2
    for k in 0..8 {
        assert_eq!(j.power_mod(k as i64), naive_power_mod(k, &[2, -3, 0, 1]));
    }
    // t^{-k} · t^k ≡ 1
    for k in 1..6 {
        let prod = j.mul_classes(&j.power_mod(-k), &j.power_mod(k));
        assert_eq!(prod, ints(&[1, 0, 0]));
    }
    let single = IdealSpec::new(ints(&[2]), vec![1]).unwrap();
    assert_eq!(single.power_mod(-1), vec![frac(1, 2)]);
    assert!(j.contains(&j.generator().shifted(-3)));
    assert!(!j.contains(&LaurentPoly::t_power(1)));
}

#[test]
fn evaluation_at_one_is_the_algebra() {
    let a = sl21();
    let q = quotient_algebra(&a, &IdealSpec::new(ints(&[1]), vec![1]).unwrap());
    let t = a.table();
    assert_eq!(q.dim(), t.dim());
    for x in 0..t.dim() {
        for y in 0..t.dim() {
            assert_eq!(q.table().bracket(x, y), t.bracket(x, y));
        }
    }
}

#[test]
fn quotient_brackets_reduce_mod_p() {
    let a = sl21();
    let q = quotient_algebra(&a, &IdealSpec::new(ints(&[2, 3]), vec![1, 1]).unwrap());
    let t = a.table();
    let d = t.dim();
    assert_eq!(q.dim(), 2 * d);
    // [x⊗t, y⊗t] = [x,y]⊗t² and t² ≡ 5t − 6
    for x in 0..d {
        for y in 0..d {
            let mut expected = SparseVec::new();
            for (k, c) in t.bracket(x, y).iter() {
                expected = expected.add(&SparseVec::from_pairs([(k, c * int(-6)), (d + k, c * int(5))]));
            }
            assert_eq!(q.table().bracket(d + x, d + y), &expected);
        }
    }
    assert_eq!(q.table().jacobi_violation(), None);
    assert_eq!(q.table().antisymmetry_violation(), None);
}

#[test]
fn non_radical_quotient_is_a_superalgebra() {
    let a = sl21();
    let q = quotient_algebra(&a, &IdealSpec::new(ints(&[1]), vec![2]).unwrap());
    assert_eq!(q.dim(), 16);
    assert_eq!(q.table().jacobi_violation(), None);
    assert!(q.crt_matrix().is_none());
}

#[test]
fn crt_is_a_bracket_isomorphism() {
    let a = sl21();
    let q = quotient_algebra(&a, &IdealSpec::new(ints(&[2, 3]), vec![1, 1]).unwrap());
    let crt = q.crt_matrix().unwrap();
    let d = a.dim();
    assert_eq!(superloop_core::exactnum::rank(&crt), 2 * d);
    // image of x⊗t is (2x, 3x)
    for x in 0..d {
        assert_eq!(crt.column(d + x), &SparseVec::from_pairs([(x, int(2)), (d + x, int(3))]));
    }
    let t = a.table();
    let split = |v: &SparseVec, j: usize| SparseVec::from_pairs(v.iter().filter(|(i, _)| i / d == j).map(|(i, c)| (i % d, c.clone())));
    for u in 0..q.dim() {
        for v in 0..q.dim() {
            let lhs = crt.mul_vec(q.table().bracket(u, v));
            let (cu, cv) = (crt.column(u), crt.column(v));
            let mut rhs = SparseVec::new();
            for j in 0..2 {
                let b = t.bracket_vec(&split(cu, j), &split(cv, j));
                rhs = rhs.add(&b.remap(|i| Some(j * d + i)));
            }
            assert_eq!(lhs, rhs);
        }
    }
}

#[test]
fn evaluation_at_one_matches_irreducible() {
    let a = sl21();
    let lam = a.kind.full_from_ss(&w(&[1, 0, 0]), &int(3));
    let v = irreducible_g(&a, &lam).unwrap();
    let e = evaluation_module(&a, &[lam], &ints(&[1])).unwrap();
    assert_eq!(e.module.dim(), v.dim());
    for x in 0..a.dim() {
        assert_eq!(e.module.action(x), v.action(x));
    }
}

#[test]
fn evaluation_rejects_repeated_points() {
    let a = sl21();
    let lam = w(&[1, 0, 0]);
    assert!(evaluation_module(&a, &[lam.clone(), lam], &ints(&[2, 2])).is_err());
}

#[test]
fn evaluation_module_highest_weight_and_kernel() {
    let a = sl21();
    let nat = w(&[1, 0, 0]);
    let lam2 = a.kind.full_from_ss(&w(&[1, 0, 0]), &int(2));
    let pts = vec![int(2), frac(-1, 3)];
    let e = evaluation_module(&a, &[nat.clone(), lam2.clone()], &pts).unwrap();
    let m = &e.module;
    assert_eq!(m.bracket_violation(m.all_pairs()), None);
    assert!(m.is_irreducible());
    assert!(m.is_integrable());
    let top = m.top_index().unwrap();
    let v = SparseVec::unit(top);
    let psi = e.psi();
    for (k, diag) in a.table().cartan_diag.iter().enumerate() {
        let h = a.table().cartan[k];
        for mm in -2..4 {
            let expected =
                pow_sum(&pts, mm, &[a.kind.eval_diag(&nat, diag), a.kind.eval_diag(&lam2, diag)]);
            assert_eq!(psi.eval(diag, mm), expected);
            assert_eq!(e.loop_action(h, mm).mul_vec(&v), v.scaled(&expected));
        }
    }
    // x ⊗ P(t) t^s acts by zero, and the reduced action agrees with the slot action
    let p = e.algebra.ideal().generator();
    for x in 0..a.dim() {
        for s in -1..3 {
            assert!(e.laurent_action(x, &p.shifted(s)).is_zero());
        }
        for s in 0..2 {
            assert_eq!(&e.loop_action(x, s as i64), m.action(e.algebra.index(x, s)));
        }
    }
}

fn pow_sum(points: &[Scalar], m: i64, values: &[Scalar]) -> Scalar {
    points
        .iter()
        .zip(values)
        .map(|(a, v)| superloop_core::exactnum::scalar::pow(a, m) * v)
        .sum()
}

#[test]
fn psi_examples() {
    let a = sl21();
    let lam = w(&[1, 0, 0]);
    let h = &a.table().cartan_diag[0];
    let p = psi_from(a.kind, &[lam.clone(), lam.clone()], &ints(&[1, -1]));
    for m in [1, 3, -1, 5] {
        assert!(p.eval(h, m).is_zero());
    }
    assert_eq!(p.eval(h, 0), int(2) * a.kind.eval_diag(&lam, h));
    let single = psi_from(a.kind, std::slice::from_ref(&lam), &ints(&[2]));
    assert_eq!(single.eval(h, 3), int(8) * a.kind.eval_diag(&lam, h));
}

#[test]
fn detect_period_examples() {
    let a = sl21();
    let zero = w(&[0, 0, 0]);
    let lam = w(&[1, 0, 0]);
    assert_eq!(detect_period(&a, &[zero.clone(), zero.clone()], &ints(&[1, 2])).unwrap(), 0);
    assert_eq!(detect_period(&a, std::slice::from_ref(&lam), &ints(&[5])).unwrap(), 1);
    assert_eq!(detect_period(&a, &[lam.clone(), lam.clone()], &ints(&[1, -1])).unwrap(), 2);
    assert_eq!(detect_period(&a, &[lam.clone(), lam.clone()], &ints(&[2, -2])).unwrap(), 2);
    assert_eq!(detect_period(&a, &[lam.clone(), zero], &ints(&[1, -1])).unwrap(), 1);
    let other = w(&[2, 0, 0]);
    assert_eq!(detect_period(&a, &[lam, other], &ints(&[1, -1])).unwrap(), 1);
}

#[test]
fn graded_action_shifts_slices() {
    let a = sl21();
    let e = evaluation_module(&a, &[w(&[1, 0, 0])], &ints(&[3])).unwrap();
    let g = loop_module(Arc::new(e.module.clone()), e.algebra.ideal(), frac(1, 2)).unwrap();
    assert_eq!(g.d_eigenvalue(0), frac(1, 2));
    assert_eq!(g.d_eigenvalue(-2), frac(-3, 2));
    let v = SparseVec::unit(0);
    let (s, _) = g.act(3, 2, -1, &v);
    assert_eq!(s, 1);
    // x(m) acts as 3^m x
    for m in -2..3 {
        let expected = e.module.action(3).scaled(&superloop_core::exactnum::scalar::pow(&int(3), m));
        assert_eq!(*g.x_action(3, m), expected);
    }
    assert_eq!(g.slice_multiplicities(), e.module.weight_multiplicities());
}

/// Dimension of the super-symmetric square of a space with `e` even and `o` odd basis vectors.
fn super_sym2(e: usize, o: usize) -> usize {
    e * (e + 1) / 2 + e * o + o * o.saturating_sub(1) / 2
}

#[test]
fn loop_decomposition_r1_and_r2() {
    let a = sl21();
    let nat = w(&[1, 0, 0]);
    let e1 = evaluation_module(&a, std::slice::from_ref(&nat), &ints(&[2])).unwrap();
    let g1 = loop_module(Arc::new(e1.module.clone()), e1.algebra.ideal(), int(0)).unwrap();
    let top = SparseVec::unit(e1.module.top_index().unwrap());
    let comps = decompose_loop(&g1, &top, 1, -2, 2).unwrap();
    assert_eq!(comps.len(), 1);
    assert!(comps[0].slice_dims().values().all(|&d| d == 3));

    let e2 = evaluation_module(&a, &[nat.clone(), nat.clone()], &ints(&[1, -1])).unwrap();
    let r = detect_period(&a, &e2.lambdas, &e2.points).unwrap();
    assert_eq!(r, 2);
    let g2 = loop_module(Arc::new(e2.module.clone()), e2.algebra.ideal(), int(0)).unwrap();
    let top = SparseVec::unit(e2.module.top_index().unwrap());
    let comps = decompose_loop(&g2, &top, r, -4, 4).unwrap();
    assert_eq!(comps.len(), 2);
    let even = e2.module.parity().iter().filter(|p| !p.is_odd()).count();
    let (ne, no) = (2, 1);
    assert_eq!(even, ne * ne + no * no);
    let sym = super_sym2(ne, no);
    let alt = 9 - sym;
    for c in &comps {
        for (s, d) in c.slice_dims() {
            let expected = if (s - c.index).rem_euclid(2) == 0 { sym } else { alt };
            assert_eq!(d, expected, "component {} slice {s}", c.index);
        }
    }
}

#[test]
fn c3_evaluation_module() {
    let a = Arc::new(build_c(3).unwrap());
    let nat = w(&[1, 0, 0]);
    let v = irreducible_g(&a, &nat).unwrap();
    let e = evaluation_module(&a, &[nat.clone(), nat], &ints(&[1, 2])).unwrap();
    assert_eq!(e.module.dim(), v.dim() * v.dim());
    assert!(e.module.is_irreducible());
    let p = e.algebra.ideal().generator();
    for x in 0..a.dim() {
        assert!(e.laurent_action(x, &p).is_zero());
    }
}
