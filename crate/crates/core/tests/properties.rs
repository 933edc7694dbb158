mod common;

use common::*;
use num_complex::Complex64;
use wordmap::group::builtin_group_file;
use wordmap::{
    commutator_with_fresh, disjoint_product_coeff, distribution, formula_expansion, inverse_coeff, normalize,
    oracle_expansion, ClassFunction, FiniteGroup, BUILTIN_NAMES, DEFAULT_BUDGET,
};

#[test]
fn commutator_with_a_fresh_letter() {
    let (g, t) = setup("S3");
    let x2 = oracle_expansion(&word_over("x^2", "x,y"), &g, &t, DEFAULT_BUDGET).unwrap();
    let x2_alone = oracle_expansion(&word("x^2"), &g, &t, DEFAULT_BUDGET).unwrap();
    let target = oracle_expansion(&word("[x^2,y]"), &g, &t, DEFAULT_BUDGET).unwrap();
    for chi in 0..t.len() {
        assert!(close(commutator_with_fresh(&x2_alone, &t, chi), target.coefficient(chi)));
        // the extra letter y only rescales N_w by |G|
        assert!(close(x2.coefficient(chi), x2_alone.coefficient(chi) * 6.0));
    }
    for name in ["Q8", "A4", "Z5"] {
        let (g, t) = setup(name);
        let single = oracle_expansion(&word("x"), &g, &t, DEFAULT_BUDGET).unwrap();
        let w = word("x y x^-1 y^2");
        let fw = oracle_expansion(&w, &g, &t, DEFAULT_BUDGET).unwrap();
        let target = oracle_expansion(&word("[x y x^-1 y^2, z]"), &g, &t, DEFAULT_BUDGET).unwrap();
        for chi in 0..t.len() {
            let want = real(g.order() as f64 / t.degree(chi) as f64);
            assert!(close(commutator_with_fresh(&single, &t, chi), want));
            assert!(close(commutator_with_fresh(&fw, &t, chi), target.coefficient(chi)), "{name} chi {chi}");
        }
        let triv = t.trivial_index();
        assert!(close(commutator_with_fresh(&fw, &t, triv), real((g.order() as f64).powi(2))));
    }
}

#[test]
fn disjoint_products() {
    for name in ["S3", "Q8", "Z4"] {
        let (g, t) = setup(name);
        let comm = oracle_expansion(&word("[x,y]"), &g, &t, DEFAULT_BUDGET).unwrap();
        let brace = oracle_expansion(&word("{x,y}"), &g, &t, DEFAULT_BUDGET).unwrap();
        let empty = oracle_expansion(&word("1"), &g, &t, DEFAULT_BUDGET).unwrap();
        let brace2 = oracle_expansion(&word("{x,y}{z,t}"), &g, &t, DEFAULT_BUDGET).unwrap();
        let mixed = oracle_expansion(&word("[x,y] z^2 t"), &g, &t, DEFAULT_BUDGET).unwrap();
        let tail = oracle_expansion(&word("z^2 t"), &g, &t, DEFAULT_BUDGET).unwrap();
        for chi in 0..t.len() {
            let q = g.order() as f64 / t.degree(chi) as f64;
            let c = comm.coefficient(chi);
            assert!(close(disjoint_product_coeff(c, c, &t, chi), real(q.powi(3))));
            assert!(close(disjoint_product_coeff(c, empty.coefficient(chi), &t, chi), c));
            let b = brace.coefficient(chi);
            let real_delta = if t.is_real(chi) { 1.0 } else { 0.0 };
            assert!(close(disjoint_product_coeff(b, b, &t, chi), real(q.powi(3) * real_delta)));
            assert!(close(brace2.coefficient(chi), disjoint_product_coeff(b, b, &t, chi)));
            assert!(close(mixed.coefficient(chi), disjoint_product_coeff(c, tail.coefficient(chi), &t, chi)));
        }
    }
}

#[test]
fn inverse_coefficients_conjugate() {
    assert_eq!(inverse_coeff(Complex64::new(2.0, 0.0)), Complex64::new(2.0, 0.0));
    assert_eq!(inverse_coeff(Complex64::default()), Complex64::default());
    for name in ["Z3", "A4"] {
        let (g, t) = setup(name);
        let w = word("x y x y^-1 x^2 y^2");
        let a = oracle_expansion(&w, &g, &t, DEFAULT_BUDGET).unwrap();
        let b = oracle_expansion(&w.invert(), &g, &t, DEFAULT_BUDGET).unwrap();
        for chi in 0..t.len() {
            assert!(close(b.coefficient(chi), inverse_coeff(a.coefficient(chi))));
        }
    }
}

#[test]
fn convolution_of_characters() {
    for name in BUILTIN_NAMES {
        let (g, t) = setup(name);
        for a in 0..t.len() {
            let ca = ClassFunction::character(&t, a);
            for b in 0..t.len() {
                let conv = ca.convolve(&ClassFunction::character(&t, b), &g);
                for c in 0..t.len() {
                    let want = if a == b { t.row(a)[c] / t.degree(a) as f64 } else { Complex64::default() };
                    assert!((conv.values[c] - want).norm() <= 1e-9, "{name}: {a} * {b}");
                }
            }
        }
    }
}

#[test]
fn frobenius_integrality_and_square_classes() {
    for name in BUILTIN_NAMES {
        let (g, t) = setup(name);
        for chi in 0..t.len() {
            assert_eq!(g.order() % t.degree(chi), 0, "{name}");
        }
        let classes = t.classes();
        for x in 0..g.order() {
            let c = classes.class_of[x];
            assert_eq!(classes.class_of[g.mul(x, x)], classes.square_class[c], "{name}");
        }
        assert_eq!(classes.sizes.iter().sum::<usize>(), g.order());
        assert!(classes.sizes.iter().all(|s| g.order() % s == 0));
    }
}

#[test]
fn shipped_group_files_load() {
    for name in BUILTIN_NAMES {
        let (g, _) = setup(name);
        let loaded = FiniteGroup::parse_file(builtin_group_file(name).unwrap()).unwrap();
        assert!(loaded.same_table(&g), "{name}");
    }
}

#[test]
fn unused_letters_scale_by_the_group_order() {
    let (g, t) = setup("Q8");
    let w = word("x y x y^-1 x^3");
    let wider = word_over("x y x y^-1 x^3", "x,y,z");
    let (a, _) = formula_expansion(&normalize(&w), &g, &t, DEFAULT_BUDGET).unwrap();
    let (b, _) = formula_expansion(&normalize(&wider), &g, &t, DEFAULT_BUDGET).unwrap();
    for chi in 0..t.len() {
        assert!(close(b.coefficient(chi), a.coefficient(chi) * 8.0));
    }
    let d = distribution(&wider, &g, DEFAULT_BUDGET).unwrap();
    let e = distribution(&w, &g, DEFAULT_BUDGET).unwrap();
    assert!(d.counts.iter().zip(&e.counts).all(|(x, y)| *x == 8 * y));
}
