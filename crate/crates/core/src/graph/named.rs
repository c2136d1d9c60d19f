//! Shorthand names for the small patterns that show up in examples.

use crate::graph::Graph;

/// Names accepted by [`named_graph`], in the order [`name_of`] prefers them.
pub const NAMES: &[&str] = &[
    "K0", "K1", "K2", "I2", "triangle", "K3", "I3", "P3", "K4", "I4", "P4", "C4", "paw",
    "diamond", "C5", "K5",
];

pub fn named_graph(name: &str) -> Option<Graph> {
    let g = match name {
        "K0" => Graph::new(0),
        "K1" => Graph::new(1),
        "K2" => Graph::complete(2),
        "K3" | "triangle" => Graph::complete(3),
        "K4" => Graph::complete(4),
        "K5" => Graph::complete(5),
        "I2" => Graph::new(2),
        "I3" => Graph::new(3),
        "I4" => Graph::new(4),
        "P3" => Graph::path(3),
        "P4" => Graph::path(4),
        "C4" => Graph::cycle(4),
        "C5" => Graph::cycle(5),
        // triangle with a pendant edge
        "paw" => Graph::from_edges(4, &[(0, 1), (0, 2), (1, 2), (2, 3)]).ok()?,
        // K4 minus an edge
        "diamond" => Graph::from_edges(4, &[(0, 1), (0, 2), (1, 2), (1, 3), (2, 3)]).ok()?,
        _ => return None,
    };
    Some(g)
}

/// First shorthand whose graph is isomorphic to `g`.
pub fn name_of(g: &Graph) -> Option<&'static str> {
    let caps = crate::Caps::default();
    if g.n() > 5 {
        return None;
    }
    NAMES.iter().copied().find(|name| {
        let h = named_graph(name).expect("listed names resolve");
        crate::graph::is_isomorphic(&h, g, &caps).unwrap_or(false)
    })
}
