use surfknot::{
    color_count, enumerate_bikei, euler_characteristic, from_gauss, merge_components, naive_components, to_gauss,
    Error, GaussMVD, MarkedVertexDiagram,
};

const FIXTURES: &[&str] = &[
    "0_1.mvd",
    "8_1.mvd",
    "genus2.mvd",
    "kink.mvd",
    "klein_bottle.mvd",
    "projective_plane.mvd",
    "projective_plane_minus.mvd",
    "torus.mvd",
    "trefoil.mvd",
    "virtual_nonorientable.mvd",
];

fn fixture(name: &str) -> MarkedVertexDiagram {
    let path = format!("{}/../../fixtures/{name}", env!("CARGO_MANIFEST_DIR"));
    MarkedVertexDiagram::parse(&std::fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn round_trip_keeps_invariants() {
    let tables: Vec<_> = (1..=3).flat_map(|n| enumerate_bikei(n, false)).collect();
    let mut done = 0;
    for name in FIXTURES {
        let d = fixture(name);
        if d.nodes().is_empty() {
            assert_eq!(to_gauss(&d), Err(Error::FreeLoops));
            continue;
        }
        let d = match to_gauss(&d) {
            Err(Error::MustMerge(k)) => {
                assert_eq!(k, naive_components(&d).len());
                merge_components(&d).unwrap()
            }
            _ => d,
        };
        let g = to_gauss(&d).unwrap();
        assert_eq!(GaussMVD::parse(&g.to_text()).unwrap(), g);
        let e = from_gauss(&g).unwrap();
        assert!(to_gauss(&e).unwrap().equivalent(&g), "{name}");
        let (a, b) = (euler_characteristic(&d), euler_characteristic(&e));
        assert_eq!((a.euler, a.orientable), (b.euler, b.orientable), "{name}");
        for t in &tables {
            assert_eq!(color_count(&d, t), color_count(&e, t), "{name}");
        }
        done += 1;
    }
    assert_eq!(done, FIXTURES.len() - 1);
}
