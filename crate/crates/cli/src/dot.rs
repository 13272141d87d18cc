//! Graphviz output: objects as nodes, non-identity morphisms as labelled edges.

use std::fmt::Write;

use deltalens_core::{FinCat, Mor};

use crate::error::{CliError, Result};
use crate::workspace::Workspace;

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

fn body(out: &mut String, c: &FinCat, prefix: &str, indent: &str, highlight: &dyn Fn(Mor) -> bool) {
    for x in c.objects() {
        let id = c.object_id(x);
        writeln!(
            out,
            "{indent}{} [label={}];",
            quote(&format!("{prefix}{id}")),
            quote(id)
        )
        .unwrap();
    }
    for m in c.non_identities() {
        let (s, t) = (c.object_id(c.src(m)), c.object_id(c.tgt(m)));
        let style = if highlight(m) {
            ", color=red, penwidth=2"
        } else {
            ""
        };
        writeln!(
            out,
            "{indent}{} -> {} [label={}{style}];",
            quote(&format!("{prefix}{s}")),
            quote(&format!("{prefix}{t}")),
            quote(c.morphism_id(m))
        )
        .unwrap();
    }
}

/// DOT text for a category, a functor (domain and codomain clusters joined
/// by dashed object assignments) or a lens (its domain, chosen lifts in red).
/// Categories shadow functors, which shadow lenses.
pub fn export_dot(ws: &Workspace, entry: &str) -> Result<String> {
    let mut out = format!("digraph {} {{\n", quote(entry));
    if let Ok(c) = ws.category(entry) {
        body(&mut out, c, "", "  ", &|_| false);
    } else if let Ok(e) = ws.functor(entry) {
        let f = &e.functor;
        for (i, (name, c)) in [(&e.dom, f.dom()), (&e.cod, f.cod())]
            .into_iter()
            .enumerate()
        {
            writeln!(out, "  subgraph cluster_{i} {{\n    label={};", quote(name)).unwrap();
            body(&mut out, c, &format!("{i}:"), "    ", &|_| false);
            out.push_str("  }\n");
        }
        for x in f.dom().objects() {
            let (s, t) = (f.dom().object_id(x), f.cod().object_id(f.obj(x)));
            writeln!(
                out,
                "  {} -> {} [style=dashed];",
                quote(&format!("0:{s}")),
                quote(&format!("1:{t}"))
            )
            .unwrap();
        }
    } else {
        let l = &ws
            .lens(entry)
            .map_err(|_| CliError::Unknown {
                kind: "entry",
                name: entry.into(),
            })?
            .lens;
        let chosen: Vec<Mor> = l.lifts().iter().map(|(_, w)| w).collect();
        body(&mut out, l.functor().dom(), "", "  ", &|m| {
            chosen.contains(&m)
        });
    }
    out.push_str("}\n");
    Ok(out)
}
