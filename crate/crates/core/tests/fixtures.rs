use surfknot::{
    color_count, counts, crossing_change, enumerate_bikei, euler_characteristic, fixed_set, naive_components, orient,
    smooth_saddles, two_colorable, verify_bikei, BikeiTable, DiagramCounts, Level, MarkedVertexDiagram,
};

fn fixture(name: &str) -> MarkedVertexDiagram {
    let path = format!("{}/../../fixtures/{name}", env!("CARGO_MANIFEST_DIR"));
    MarkedVertexDiagram::parse(&std::fs::read_to_string(path).unwrap()).unwrap()
}

fn table(name: &str) -> BikeiTable {
    let path = format!("{}/../../fixtures/{name}", env!("CARGO_MANIFEST_DIR"));
    BikeiTable::parse(&std::fs::read_to_string(path).unwrap()).unwrap()
}

fn small_tables() -> Vec<BikeiTable> {
    (1..=3).flat_map(|n| enumerate_bikei(n, false)).collect()
}

#[test]
fn example_values() {
    let s4 = table("paper_s4.bikei");
    assert!(verify_bikei(&s4).valid());
    assert_eq!(fixed_set(&s4).members, vec![1, 2, 3, 4]);
    assert_eq!(color_count(&fixture("8_1.mvd"), &s4), 10);
    assert_eq!(color_count(&fixture("0_1.mvd"), &s4), 4);
    assert!(verify_bikei(&table("z4_alexander.bikei")).valid());
    assert!(fixed_set(&table("z2_flip.bikei")).is_empty());
}

#[test]
fn spun_trefoil_tallies() {
    let d = fixture("8_1.mvd");
    assert_eq!(counts(&d), DiagramCounts { c: 6, h: 2, v: 0, ch: 8, vch: 8 });
    let e = euler_characteristic(&d);
    assert_eq!((e.euler, e.orientable, e.genus_or_crosscaps), (2, true, 0));
    assert_eq!(naive_components(&d).len(), 1);
    for level in [Level::Lower, Level::Upper] {
        let s = smooth_saddles(&d, level);
        assert!(s.nodes().iter().all(|n| !n.is_saddle()));
    }
}

#[test]
fn surfaces_of_fixtures() {
    let want = [
        ("0_1.mvd", 2, true, 0),
        ("8_1.mvd", 2, true, 0),
        ("torus.mvd", 0, true, 1),
        ("genus2.mvd", -2, true, 2),
        ("projective_plane.mvd", 1, false, 1),
        ("projective_plane_minus.mvd", 1, false, 1),
        ("klein_bottle.mvd", 0, false, 2),
        ("virtual_nonorientable.mvd", 1, false, 1),
    ];
    for (name, chi, orientable, g) in want {
        let e = euler_characteristic(&fixture(name));
        assert_eq!((e.euler, e.orientable, e.genus_or_crosscaps), (chi, orientable, g), "{name}");
        assert_eq!(orient(&fixture(name)).is_ok(), orientable, "{name}");
    }
}

#[test]
fn unknotted_surface_laws() {
    let tables = small_tables();
    for name in ["0_1.mvd", "torus.mvd", "genus2.mvd"] {
        let d = fixture(name);
        for t in &tables {
            assert_eq!(color_count(&d, t), t.order() as u64, "{name}");
        }
    }
    for name in ["projective_plane.mvd", "projective_plane_minus.mvd", "klein_bottle.mvd"] {
        let d = fixture(name);
        for t in &tables {
            assert_eq!(color_count(&d, t), fixed_set(t).len() as u64, "{name}");
            if t.is_kei() {
                assert_eq!(color_count(&d, t), t.order() as u64, "{name}");
            }
        }
    }
}

#[test]
fn two_colorings() {
    let v = fixture("virtual_nonorientable.mvd");
    assert!(orient(&v).is_err());
    assert!(two_colorable(&v));
    for name in ["projective_plane.mvd", "klein_bottle.mvd"] {
        assert!(!two_colorable(&fixture(name)));
    }
    let flip = table("z2_flip.bikei");
    let names = [
        "0_1.mvd",
        "8_1.mvd",
        "torus.mvd",
        "genus2.mvd",
        "projective_plane.mvd",
        "projective_plane_minus.mvd",
        "klein_bottle.mvd",
        "virtual_nonorientable.mvd",
        "trefoil.mvd",
        "kink.mvd",
    ];
    for name in names {
        let d = fixture(name);
        assert_eq!(two_colorable(&d), color_count(&d, &flip) > 0, "{name}");
        for (i, n) in d.nodes().iter().enumerate() {
            if n.is_classical() {
                let e = crossing_change(&d, i).unwrap();
                assert_eq!(two_colorable(&e), two_colorable(&d), "{name} node {i}");
            }
        }
    }
}
