//! Random walks through move sites, checking invariants at every step.

use std::collections::BTreeSet;

use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use surfknot::{
    all_sites, apply_move, color_count, detour, detour_sites, enumerate_bikei, euler_characteristic, BikeiTable,
    Direction, MarkedVertexDiagram, MoveId,
};

const FIXTURES: &[&str] = &[
    include_str!("../../../fixtures/0_1.mvd"),
    include_str!("../../../fixtures/8_1.mvd"),
    include_str!("../../../fixtures/genus2.mvd"),
    include_str!("../../../fixtures/kink.mvd"),
    include_str!("../../../fixtures/klein_bottle.mvd"),
    include_str!("../../../fixtures/projective_plane.mvd"),
    include_str!("../../../fixtures/projective_plane_minus.mvd"),
    include_str!("../../../fixtures/torus.mvd"),
    include_str!("../../../fixtures/trefoil.mvd"),
    include_str!("../../../fixtures/virtual_nonorientable.mvd"),
    "V 1 2 3 4\nS 4 3 1 2 0",
];

fn tables() -> Vec<BikeiTable> {
    let mut t = enumerate_bikei(2, false);
    t.extend(enumerate_bikei(3, true));
    t
}

fn profile(d: &MarkedVertexDiagram, t: &[BikeiTable]) -> (Vec<u64>, i64, bool) {
    let s = euler_characteristic(d);
    (t.iter().map(|x| color_count(d, x)).collect(), s.euler, s.orientable)
}

#[test]
fn every_move_keeps_phi_and_surface() {
    let t = tables();
    let mut rng = StdRng::seed_from_u64(7);
    let mut seen: BTreeSet<(MoveId, Direction)> = BTreeSet::new();
    for text in FIXTURES {
        let start = MarkedVertexDiagram::parse(text).unwrap();
        let want = profile(&start, &t);
        for _ in 0..6 {
            let mut d = start.clone();
            for _ in 0..5 {
                if d.nodes().len() > 12 {
                    break;
                }
                let sites = all_sites(&d);
                // favour moves that rarely show up
                let rare: Vec<_> = sites.iter().filter(|s| !seen.contains(&(s.move_id, s.direction))).collect();
                let s = if !rare.is_empty() {
                    (*rare.choose(&mut rng).unwrap()).clone()
                } else {
                    sites.choose(&mut rng).unwrap().clone()
                };
                let e = apply_move(&d, &s).unwrap();
                assert_eq!(profile(&e, &t), want, "{s} on\n{}", d.to_text());
                seen.insert((s.move_id, s.direction));
                d = e;
            }
            for s in detour_sites(&d).into_iter().take(8) {
                let e = detour(&d, &s.path, &s.route).unwrap();
                assert_eq!(profile(&e, &t), want, "{s:?} on\n{}", d.to_text());
            }
        }
    }
    for id in MoveId::ALL {
        for dir in [Direction::Forward, Direction::Backward] {
            assert!(seen.contains(&(id, dir)), "{id} {dir} never applied");
        }
    }
}

#[test]
fn every_site_has_an_inverse() {
    for text in FIXTURES {
        let d = MarkedVertexDiagram::parse(text).unwrap();
        let key = d.canonical_key();
        for s in all_sites(&d).into_iter().filter(|s| !s.matched_nodes.is_empty()) {
            let e = apply_move(&d, &s).unwrap();
            let back = all_sites(&e)
                .into_iter()
                .filter(|b| b.move_id == s.move_id && b.direction != s.direction)
                .any(|b| apply_move(&e, &b).unwrap().canonical_key() == key);
            assert!(back, "{s}");
        }
    }
}
