use std::f64::consts::PI;

use billiard_beta::geometry::{affine_image, make_named, AffineMap, NamedFamily, SupportDomain, Vec2};
use billiard_beta::Error;
use proptest::prelude::*;

#[test]
fn ellipse_perimeter_and_area() {
    let e: NamedFamily = "ellipse:2,1".parse().unwrap();
    let dom = make_named(e).unwrap();
    // complete elliptic integral, evaluated independently by adaptive quadrature
    assert!((dom.perimeter() - 9.688448220547675).abs() < 1e-6);
    assert!((dom.area() - 2.0 * PI).abs() < 1e-9);
    assert!(dom.is_ellipse(1e-10));
}

#[test]
fn json_round_trip_and_validation() {
    let dom = make_named(NamedFamily::Gutkin { n: 3, eps: 0.05 }).unwrap();
    let text = serde_json::to_string(&dom).unwrap();
    let back: SupportDomain = serde_json::from_str(&text).unwrap();
    assert_eq!(dom, back);
    let bad: Result<SupportDomain, _> = serde_json::from_str(r#"{"a0": 1.0, "modes": [[0, 0], [0.5, 0]]}"#);
    assert!(bad.is_err());
    assert!(matches!(SupportDomain::new(1.0, vec![(0.0, 0.0), (0.0, 0.4)]), Err(Error::NonConvex(_))));
}

#[test]
fn named_parsing_errors() {
    assert!("gutkin:4".parse::<NamedFamily>().is_err());
    assert!("torus:1".parse::<NamedFamily>().is_err());
    assert!(make_named(NamedFamily::ConstantWidth { eps: 0.05, n: 4 }).is_err());
    assert!(make_named(NamedFamily::Gutkin { n: 4, eps: 0.2 }).is_err());
}

#[test]
fn translation_leaves_shape_invariants() {
    let dom = make_named(NamedFamily::Gutkin { n: 5, eps: 0.02 }).unwrap();
    let moved = dom.translated(Vec2::new(0.3, -0.2)).unwrap();
    assert!((dom.perimeter() - moved.perimeter()).abs() < 1e-12);
    assert!((dom.area() - moved.area()).abs() < 1e-12);
    let p = dom.point(1.1) + Vec2::new(0.3, -0.2);
    assert!((moved.point(1.1) - p).norm() < 1e-12);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn area_scales_with_determinant(sx in 0.5f64..2.0, sy in 0.5f64..2.0, k in -0.5f64..0.5, th in 0.0f64..6.3) {
        let dom = make_named(NamedFamily::Gutkin { n: 3, eps: 0.03 }).unwrap();
        let map = AffineMap::diagonal(sx, sy).unwrap().then(&AffineMap::shear(k)).then(&AffineMap::rotation(th));
        let image = affine_image(&dom, &map, 64).unwrap();
        prop_assert!((image.area() - map.det() * dom.area()).abs() < 1e-7);
        let x = map.apply(&dom.point(0.7));
        // the image of a boundary point touches a supporting line of the image
        let excess = (0..4096).map(|j| {
            let p = 2.0 * PI * j as f64 / 4096.0;
            x.x * p.cos() + x.y * p.sin() - image.eval(p, 0)
        }).fold(f64::NEG_INFINITY, f64::max);
        prop_assert!(excess < 1e-7 && excess > -1e-4, "excess {}", excess);
    }

    #[test]
    fn area_formulas_agree(a1 in -0.2f64..0.2, a2 in -0.02f64..0.02, b3 in -0.01f64..0.01) {
        let dom = SupportDomain::new(1.0, vec![(a1, 0.0), (a2, 0.0), (0.0, b3)]).unwrap();
        prop_assert!((dom.area() - dom.area_closed_form()).abs() < 1e-12);
        prop_assert!((dom.perimeter() - 2.0 * PI).abs() < 1e-12);
    }
}
