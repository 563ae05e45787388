//! Lifting theorems for braided cocycles on an admissible pair: every
//! structural property of a form on B survives the passage to the biproduct,
//! the lift is unique, and over small prime fields the lifts exhaust what
//! the biproduct has natively.

use std::collections::BTreeSet;

use hopflab::biproduct::{
    biproduct, enumerate_yd_lazy_cocycles, enumerate_yd_morphism_elements,
    extend_cocycle_pair_to_biproduct, extend_cocycle_to_biproduct, extend_element_to_biproduct,
    extension_matches_neatness, extension_matches_purity, extension_unique, is_yd_neat,
    is_yd_pure, sweedler_pair, yd_convolution,
};
use hopflab::catalog;
use hopflab::cocycles;
use hopflab::enumeration::{
    bilinear_key, enumerate_lazy_cocycles, enumerate_lazy_elements, linear_key, EnumLimits,
};
use hopflab::forms::BilinearForm;
use hopflab::FieldSpec;

/// Every braided lazy cocycle on the pair lifts to a lazy left 2-cocycle on
/// the biproduct, the lifted inverse is the ordinary convolution inverse of
/// the lift, the lift is the unique form twisting the biproduct into the
/// crossed smash product, and both exchange laws transfer in both directions.
#[test]
fn lazy_cocycles_lift_with_all_their_structure() {
    for p in [3u64, 5] {
        let pair = sweedler_pair(FieldSpec::Fp(p)).unwrap();
        let forms = enumerate_yd_lazy_cocycles(&pair, &EnumLimits::default()).unwrap();
        assert_eq!(forms.len(), p as usize);
        for sigma in &forms {
            let (bar, bar_inv) = extend_cocycle_pair_to_biproduct(sigma).unwrap();
            assert!(cocycles::is_lazy_cocycle_condition(&bar).passed());
            assert!(cocycles::is_left_2cocycle(&bar).passed());
            let independent = bar.convolution_inverse().unwrap();
            assert_eq!(bar_inv.coeffs(), independent.coeffs());
            assert!(extension_unique(sigma).unwrap().passed());
            assert!(extension_matches_purity(sigma).unwrap().passed());
            assert!(extension_matches_neatness(sigma).unwrap().passed());
            if is_yd_neat(sigma).passed() {
                assert!(cocycles::is_neat(&bar).passed());
            }
            if is_yd_pure(sigma).unwrap().passed() {
                assert!(cocycles::is_pure(&bar).unwrap().passed());
            }
        }
    }
}

/// The lift is a homomorphism for convolution: the lift of a braided
/// convolution is the ordinary convolution of the lifts.
#[test]
fn lifting_commutes_with_convolution() {
    let pair = sweedler_pair(FieldSpec::Fp(3)).unwrap();
    let forms = enumerate_yd_lazy_cocycles(&pair, &EnumLimits::default()).unwrap();
    let bars: Vec<BilinearForm> = forms
        .iter()
        .map(|s| extend_cocycle_to_biproduct(s).unwrap())
        .collect();
    for (i, s) in forms.iter().enumerate() {
        for (j, t) in forms.iter().enumerate() {
            let st = yd_convolution(s, t).unwrap();
            let bar_st = extend_cocycle_to_biproduct(&st).unwrap();
            let conv = bars[i].convolve(&bars[j]).unwrap();
            assert_eq!(bar_st.coeffs(), conv.coeffs());
        }
    }
}

/// The biproduct of the two-dimensional pair is the four-dimensional catalog
/// algebra, and the lifts of its braided lazy cocycles are exactly the lazy
/// cocycles the biproduct has natively.
#[test]
fn lifts_exhaust_the_lazy_cocycles_of_the_biproduct() {
    let lim = EnumLimits::default();
    for p in [3u64, 5] {
        let field = FieldSpec::Fp(p);
        let pair = sweedler_pair(field).unwrap();
        let d = biproduct(&pair).unwrap();
        assert!(d.same_structure(&catalog::builtin("h4", field).unwrap()));
        let lifted: BTreeSet<Vec<u64>> = enumerate_yd_lazy_cocycles(&pair, &lim)
            .unwrap()
            .iter()
            .map(|s| bilinear_key(&extend_cocycle_to_biproduct(s).unwrap()))
            .collect();
        let native: BTreeSet<Vec<u64>> = enumerate_lazy_cocycles(&d, &lim)
            .unwrap()
            .iter()
            .map(bilinear_key)
            .collect();
        assert_eq!(lifted.len(), p as usize);
        assert_eq!(lifted, native);
    }
}

/// The counit is the only morphism element on the pair; its lift is the only
/// lazy element of the biproduct and has trivial coboundary there.
#[test]
fn element_lifts_exhaust_the_lazy_elements_of_the_biproduct() {
    let pair = sweedler_pair(FieldSpec::Fp(3)).unwrap();
    let elems = enumerate_yd_morphism_elements(&pair, &EnumLimits::default()).unwrap();
    assert_eq!(elems.len(), 1);
    let bar = extend_element_to_biproduct(&elems[0]).unwrap();
    assert!(cocycles::is_lazy_element(&bar).passed());
    let d = bar.algebra();
    let native = enumerate_lazy_elements(d, &EnumLimits::default()).unwrap();
    assert_eq!(native.len(), 1);
    assert_eq!(linear_key(&native[0]), linear_key(&bar));
    let d1_bar = cocycles::d1(&bar).unwrap();
    assert_eq!(d1_bar.coeffs(), BilinearForm::counit_pair(d).coeffs());
}
