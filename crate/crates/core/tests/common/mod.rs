#![allow(dead_code)]

use matkls::lab::{generate_family, Family};
use matkls::Matroid;

pub fn k(n: usize) -> Matroid {
    let edges: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    Matroid::graphic(&edges).unwrap()
}

/// Boolean `B_1..B_5`, uniform `U_{m,d}` for `m, d <= 4`, `K_3`, `K_4`, and
/// every connected simple graph on at most five vertices.
pub fn suite() -> Vec<(String, Matroid)> {
    let mut out = Vec::new();
    for n in 1..=5 {
        out.push((format!("B{n}"), Matroid::boolean(n).unwrap()));
    }
    for m in 1..=4 {
        for d in 1..=4 {
            out.push((format!("U({m},{d})"), Matroid::uniform(m, d).unwrap()));
        }
    }
    out.push(("K3".into(), k(3)));
    out.push(("K4".into(), k(4)));
    let graphs = generate_family(&Family::GraphicConnectedSimple { min_vertices: 2, max_vertices: 5 }).unwrap();
    for g in graphs {
        out.push((g.spec().label(), g));
    }
    out
}
