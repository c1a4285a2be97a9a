//! Graphviz export of a completion structure.
//!
//! The output holds two digraphs. `forest` has one vertex per node labelled
//! `name {content}` (with ` [blocked by y]` appended for blocked nodes),
//! tree arcs drawn solid and arcs to constants dashed, each labelled with the
//! arc content. `deps` lists the dependency graph arcs between atom names.
//! Nodes appear in creation order, dependency arcs in sorted order.

use std::fmt::Write;

use super::{Forest, Phase};
use crate::syntax::Folp;

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

pub fn to_dot(f: &Forest, prog: &Folp) -> String {
    let mut out = String::new();
    out.push_str("digraph forest {\n");
    for x in f.node_ids() {
        let mut label = format!("{} {}", f.name(x), f.content_text(prog, x));
        if let Phase::Blocked(y) = f.node(x).phase {
            let _ = write!(label, " [blocked by {}]", f.name(y));
        }
        let _ = writeln!(out, "  n{} [label={}];", x.0, quote(&label));
    }
    for a in f.arc_ids() {
        let arc = f.arc(a);
        let style = if arc.tree { "" } else { ", style=dashed" };
        let _ = writeln!(
            out,
            "  n{} -> n{} [label={}{}];",
            arc.from.0,
            arc.to.0,
            quote(&f.arc_content_text(prog, a)),
            style
        );
    }
    out.push_str("}\n");
    out.push_str("digraph deps {\n");
    let mut arcs: Vec<(String, String)> = f
        .graph()
        .arcs()
        .into_iter()
        .map(|(u, v)| (f.atom_name(prog, u), f.atom_name(prog, v)))
        .collect();
    arcs.sort();
    for (u, v) in arcs {
        let _ = writeln!(out, "  {} -> {};", quote(&u), quote(&v));
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forest::GAtom;
    use crate::syntax::{parse_program, ConstId, Lit};

    #[test]
    fn labels_and_styles() {
        let p = Folp::compile(
            &parse_program("q(a).\np(X) :- f(X,Y), q(Y).\nf(X,Y) v not f(X,Y).").unwrap(),
        )
        .unwrap();
        let (q, pp, fp) = (
            p.upred("q").unwrap(),
            p.upred("p").unwrap(),
            p.bpred("f").unwrap(),
        );
        let mut f = Forest::new(&p);
        let x = f.add_root(None);
        let a = f.add_root(Some(ConstId(0)));
        let arc = f.add_es_arc(x, ConstId(0)).unwrap();
        f.insert_ulit(x, Lit::pos(pp)).unwrap();
        f.insert_ulit(a, Lit::pos(q)).unwrap();
        f.insert_blit(arc, Lit::pos(fp)).unwrap();
        f.add_dep(GAtom::U(x, pp), GAtom::B(arc, fp)).unwrap();
        f.add_dep(GAtom::U(x, pp), GAtom::U(a, q)).unwrap();
        let (c, _) = f.add_child(x);
        f.set_phase(c, Phase::Blocked(x));
        let dot = to_dot(&f, &p);
        assert_eq!(
            dot,
            "digraph forest {\n  n0 [label=\"_x {p}\"];\n  n1 [label=\"a {q}\"];\n  \
             n2 [label=\"_x.1 {} [blocked by _x]\"];\n  n0 -> n1 [label=\"{f}\", style=dashed];\n  \
             n0 -> n2 [label=\"{}\"];\n}\ndigraph deps {\n  \"p(_x)\" -> \"f(_x,a)\";\n  \
             \"p(_x)\" -> \"q(a)\";\n}\n"
        );
    }
}
