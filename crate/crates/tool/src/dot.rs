//! Graphviz rendering of abstract dual graphs.

use std::fmt::Write as _;
use std::io;
use std::path::{Path, PathBuf};

use mbs_core::{DualGraph, MultibranchedSurface, SideNode};

/// Keys longer than this fall back to an index-based file name.
const MAX_NAME: usize = 120;

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// Vertices `v0, v1, …` in canonical order, one directed edge `i- → i+` per
/// sector labeled by the sector id.
pub fn render(x: &MultibranchedSurface, g: &DualGraph) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "digraph {} {{", quote(&g.key_string(x)));
    for (i, v) in g.vertices().iter().enumerate() {
        let label = v.iter().map(|n: &SideNode| n.label(x)).collect::<Vec<_>>().join(", ");
        let _ = writeln!(s, "  v{i} [label={}];", quote(&label));
    }
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        let _ = writeln!(s, "  v{u} -> v{v} [label={}];", quote(&x.sectors()[e].id));
    }
    s.push_str("}\n");
    s
}

/// File name for the `index`-th graph: the canonical key with `|` written as
/// `.` (ids never contain `.`, so distinct keys give distinct names).
pub fn file_name(x: &MultibranchedSurface, g: &DualGraph, index: usize) -> String {
    let key = g.key_string(x).replace('|', ".");
    if key.len() <= MAX_NAME {
        format!("{key}.dot")
    } else {
        format!("graph_{index:04}.dot")
    }
}

/// Writes one file per graph into `dir`, creating it if needed.
pub fn write_all<'a>(
    x: &MultibranchedSurface,
    graphs: impl IntoIterator<Item = &'a DualGraph>,
    dir: &Path,
) -> io::Result<Vec<PathBuf>> {
    std::fs::create_dir_all(dir)?;
    let mut written = Vec::new();
    for (i, g) in graphs.into_iter().enumerate() {
        let path = dir.join(file_name(x, g, i));
        std::fs::write(&path, render(x, g))?;
        written.push(path);
    }
    Ok(written)
}

#[cfg(test)]
mod tests {
    use super::*;
    use mbs_core::families::{gen_rp2, gen_x1, gen_x2};
    use mbs_core::neighborhood::enumerate_dual_graphs;

    fn only_graph(x: &MultibranchedSurface) -> DualGraph {
        let mut c = enumerate_dual_graphs(x).unwrap();
        assert_eq!(c.len(), 1);
        c.remove(0).graph
    }

    #[test]
    fn rp2_single_loop() {
        let x = gen_rp2();
        let g = only_graph(&x);
        assert_eq!(
            render(&x, &g),
            "digraph \"e-,e+\" {\n  v0 [label=\"e-, e+\"];\n  v0 -> v0 [label=\"e\"];\n}\n"
        );
        assert_eq!(file_name(&x, &g, 0), "e-,e+.dot");
    }

    #[test]
    fn x1_two_nodes() {
        let x = gen_x1(&[1, -1]).unwrap();
        let g = only_graph(&x);
        let d = render(&x, &g);
        assert!(d.contains("  v0 [label=\"e-\"];\n  v1 [label=\"e+\"];\n  v0 -> v1 [label=\"e\"];\n"));
        assert_eq!(file_name(&x, &g, 0), "e-.e+.dot");
    }

    #[test]
    fn x2_bouquet() {
        let x = gen_x2(3).unwrap();
        let d = render(&x, &only_graph(&x));
        assert_eq!(d.matches("v0 -> v0").count(), 3);
        assert_eq!(d.matches("[label=").count(), 4);
    }

    #[test]
    fn long_keys_fall_back_to_index() {
        let x = gen_rp2().renamed(|b| b.into(), |_| "s".repeat(MAX_NAME));
        let g = only_graph(&x);
        assert_eq!(file_name(&x, &g, 7), "graph_0007.dot");
    }
}
