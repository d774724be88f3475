//! WebAssembly bindings behind the static page in `www/`.
//!
//! Three operations are exported: [`decide`], [`solve`] and
//! [`random_instance`]. Each wraps a plain Rust function of the same shape
//! so the logic can be tested natively.

use std::fmt::Write as _;

use pph_core::decide::{decide_dpph_with, decide_pph_with, Route};
use pph_core::{
    build_all_resolution_graphs, build_tree, construct_haplotypes_dpph, construct_haplotypes_pph,
    plant_instance, pph_to_dpph, verify_tree, ConstructError, GenotypeMatrix, PhylogenyTree,
    ResolutionKind,
};
use wasm_bindgen::prelude::*;

/// Largest instance the page will generate.
pub const MAX_GENERATED: usize = 200;

/// Verdict of both decision routes plus the resolution graphs they inspect.
#[wasm_bindgen(getter_with_clone)]
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decision {
    pub admits: bool,
    /// `YES` or `NO <witness>`, as printed by the command-line tool.
    pub verdict: String,
    pub routes_agree: bool,
    /// One line per non-empty resolution graph.
    pub graphs: String,
}

/// Explaining haplotypes and their perfect phylogeny.
#[wasm_bindgen(getter_with_clone)]
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Solution {
    pub haplotypes: String,
    /// Indented outline of the tree.
    pub tree: String,
    pub dot: String,
}

#[wasm_bindgen(js_name = decide)]
pub fn decide_js(text: &str, directed: bool) -> Result<Decision, JsError> {
    decide(text, directed).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = solve)]
pub fn solve_js(text: &str, directed: bool) -> Result<Solution, JsError> {
    solve(text, directed).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = randomInstance)]
pub fn random_instance_js(seed: u32, rows: u32, cols: u32) -> Result<String, JsError> {
    random_instance(u64::from(seed), rows as usize, cols as usize).map_err(|e| JsError::new(&e))
}

fn parse(text: &str) -> Result<GenotypeMatrix, String> {
    GenotypeMatrix::parse(text).map_err(|e| e.to_string())
}

pub fn decide(text: &str, directed: bool) -> Result<Decision, String> {
    let a = parse(text)?;
    let run = |route| {
        if directed {
            decide_dpph_with(&a, route)
        } else {
            decide_pph_with(&a, route)
        }
    };
    let parity = run(Route::Parity);
    let bipartite = run(Route::Bipartite);
    let instance = if directed {
        a.clone()
    } else {
        pph_to_dpph(&a).0
    };
    Ok(Decision {
        admits: parity.admits(),
        verdict: parity.to_string(),
        routes_agree: parity.admits() == bipartite.admits(),
        graphs: describe_graphs(&instance),
    })
}

fn describe_graphs(a: &GenotypeMatrix) -> String {
    let mut out = String::new();
    for g in build_all_resolution_graphs(a)
        .iter()
        .filter(|g| !g.is_empty())
    {
        let _ = write!(out, "G{}:", g.anchor() + 1);
        for e in g.edges() {
            let kind = match e.kind {
                ResolutionKind::Equal => "equal",
                ResolutionKind::Unequal => "unequal",
            };
            let _ = write!(out, " {}-{} {kind};", e.lo + 1, e.hi + 1);
        }
        out.pop();
        out.push('\n');
    }
    if out.is_empty() {
        out.push_str("all resolution graphs are empty\n");
    }
    out
}

pub fn solve(text: &str, directed: bool) -> Result<Solution, String> {
    let a = parse(text)?;
    let solved = if directed {
        construct_haplotypes_dpph(&a)
    } else {
        construct_haplotypes_pph(&a)
    };
    let b = match solved {
        Ok(b) => b,
        Err(ConstructError::NotAdmitting(w)) => return Err(format!("no solution: {w}")),
        Err(e) => return Err(e.to_string()),
    };
    let tree = build_tree(&b, directed).map_err(|e| e.to_string())?;
    verify_tree(&b, &tree).map_err(|e| e.to_string())?;
    Ok(Solution {
        haplotypes: b.to_string(),
        tree: outline(&tree),
        dot: tree.to_dot(),
    })
}

fn outline(tree: &PhylogenyTree) -> String {
    let nodes = tree.nodes();
    let mut children = vec![Vec::new(); nodes.len()];
    for (id, node) in nodes.iter().enumerate() {
        if let Some(p) = node.parent {
            children[p].push(id);
        }
    }
    let mut out = String::new();
    let mut stack = vec![(0usize, 0usize)];
    while let Some((id, depth)) = stack.pop() {
        let node = &nodes[id];
        let hap: String = node
            .haplotype
            .iter()
            .map(|&b| char::from(b'0' + b))
            .collect();
        out.push_str(&"  ".repeat(depth));
        if node.parent.is_some() {
            let cols: Vec<String> = node.columns.iter().map(|c| (c + 1).to_string()).collect();
            let _ = write!(out, "+{{{}}} ", cols.join(","));
        }
        out.push_str(&hap);
        if !node.rows.is_empty() {
            let rows: Vec<String> = node.rows.iter().map(|r| (r + 1).to_string()).collect();
            let _ = write!(out, "  rows {}", rows.join(","));
        }
        out.push('\n');
        stack.extend(children[id].iter().rev().map(|&c| (c, depth + 1)));
    }
    out
}

pub fn random_instance(seed: u64, rows: usize, cols: usize) -> Result<String, String> {
    if !(1..=MAX_GENERATED).contains(&rows) || !(1..=MAX_GENERATED).contains(&cols) {
        return Err(format!(
            "rows and columns must be between 1 and {MAX_GENERATED}"
        ));
    }
    Ok(plant_instance(seed, rows, cols).0.to_string())
}
