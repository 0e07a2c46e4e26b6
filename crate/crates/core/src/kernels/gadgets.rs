//! Gadgets that turn an annotated kernel back into a plain instance. Each
//! construction raises the optimum by a fixed offset.

use crate::error::{Error, Result};
use crate::graph::{Graph, PathEnd, Vertex};

use super::instance::{AnnotatedInstance, Origin, Problem};

/// Graph under construction with origin bookkeeping for the new vertices.
struct Builder {
    graph: Graph,
    origin: Vec<Origin>,
}

impl Builder {
    fn from(inst: &AnnotatedInstance) -> Self {
        Builder {
            graph: inst.graph.clone(),
            origin: inst.origin.clone(),
        }
    }

    fn vertex(&mut self, tag: &str) -> Vertex {
        self.origin.push(Origin::Gadget(tag.to_string()));
        self.graph.add_vertex()
    }

    fn edge(&mut self, u: Vertex, v: Vertex) -> Result<()> {
        self.graph.add_edge(u, v).map(|_| ())
    }

    /// Path of length `len` from `u` to `end`; internal vertices get `tag`, a fresh end gets `end_tag`.
    fn path(&mut self, u: Vertex, end: PathEnd, len: u32, tag: &str, end_tag: &str) -> Result<Option<Vertex>> {
        let out = self.graph.attach_path(u, end, len)?;
        let fresh_end = matches!(end, PathEnd::Fresh);
        for (i, _) in out.created.iter().enumerate() {
            let last = i + 1 == out.created.len();
            let t = if fresh_end && last { end_tag } else { tag };
            self.origin.push(Origin::Gadget(t.to_string()));
        }
        Ok(if fresh_end { out.created.last().copied() } else { None })
    }

    fn finish(self, inst: &AnnotatedInstance, offset: usize) -> AnnotatedInstance {
        let plain = AnnotatedInstance::plain(self.graph, inst.problem, inst.params, inst.k + offset);
        AnnotatedInstance {
            origin: self.origin,
            offset: inst.offset + offset,
            ..plain
        }
    }
}

fn expect(inst: &AnnotatedInstance, problems: &[Problem]) -> Result<()> {
    inst.validate()?;
    if !problems.contains(&inst.problem) {
        return Err(Error::Input(format!("gadget does not apply to {}", inst.problem)));
    }
    Ok(())
}

/// `(r,c)`-domination, offset `c`.
///
/// For `r ≥ 2`: vertices `a_1..a_c` adjacent to `b_1` and `b_2`, a path of length
/// `r−1` from `b_1` to every vertex outside `L`, and one from `b_2` to a new `b_3`.
/// For `r = 1`: `a_1..a_c` adjacent to each other, to every vertex outside `L` and to a new `b`.
pub fn be_kernel_rc_dom(inst: &AnnotatedInstance) -> Result<AnnotatedInstance> {
    expect(inst, &[Problem::RcDom])?;
    let (r, c) = (inst.params.r, inst.params.c);
    let outside = inst.outside();
    let mut b = Builder::from(inst);
    let a: Vec<Vertex> = (0..c).map(|_| b.vertex("a")).collect();
    if r >= 2 {
        let b1 = b.vertex("b1");
        let b2 = b.vertex("b2");
        for &ai in &a {
            b.edge(ai, b1)?;
            b.edge(ai, b2)?;
        }
        for &o in &outside {
            b.path(b1, PathEnd::Existing(o), r - 1, "p", "")?;
        }
        b.path(b2, PathEnd::Fresh, r - 1, "p", "b3")?;
    } else {
        let bv = b.vertex("b");
        for (i, &ai) in a.iter().enumerate() {
            b.edge(ai, bv)?;
            for &aj in &a[..i] {
                b.edge(ai, aj)?;
            }
            for &o in &outside {
                b.edge(ai, o)?;
            }
        }
    }
    Ok(b.finish(inst, c))
}

/// Total `r`-domination, offset 2: `b` joined by paths of length `r` to every vertex
/// outside `L` and to `a_1`, which is joined to `a_2` by another such path.
pub fn be_kernel_total(inst: &AnnotatedInstance) -> Result<AnnotatedInstance> {
    expect(inst, &[Problem::Total])?;
    let r = inst.params.r;
    let outside = inst.outside();
    let mut b = Builder::from(inst);
    let bv = b.vertex("b");
    for &o in &outside {
        b.path(bv, PathEnd::Existing(o), r, "p", "")?;
    }
    let a1 = b.path(bv, PathEnd::Fresh, r, "p", "a1")?.expect("fresh end");
    b.path(a1, PathEnd::Fresh, r, "p", "a2")?;
    Ok(b.finish(inst, 2))
}

/// `r`-Roman domination, offset 2: `b` joined by paths of length `r` to every vertex
/// outside `L` and to new `a_1, a_2, a_3`.
pub fn be_kernel_roman(inst: &AnnotatedInstance) -> Result<AnnotatedInstance> {
    expect(inst, &[Problem::Roman])?;
    let r = inst.params.r;
    let outside = inst.outside();
    let mut b = Builder::from(inst);
    let bv = b.vertex("b");
    for &o in &outside {
        b.path(bv, PathEnd::Existing(o), r, "p", "")?;
    }
    for tag in ["a1", "a2", "a3"] {
        b.path(bv, PathEnd::Fresh, r, "p", tag)?;
    }
    Ok(b.finish(inst, 2))
}

/// `(r,c)`-scattered sets, offset `c`: `a_2` adjacent to new `b_1..b_c`, `a_1` joined
/// by paths of length `r` to every vertex outside `U` and by a path of length `r−1`
/// to `a_2` (the same vertex when `r = 1`).
pub fn be_kernel_scattered(inst: &AnnotatedInstance) -> Result<AnnotatedInstance> {
    expect(inst, &[Problem::Scatter])?;
    let (r, c) = (inst.params.r, inst.params.c);
    let outside = inst.outside();
    let mut b = Builder::from(inst);
    let a1 = b.vertex("a1");
    let a2 = if r == 1 {
        a1
    } else {
        b.path(a1, PathEnd::Fresh, r - 1, "p", "a2")?.expect("fresh end")
    };
    for _ in 0..c {
        let bi = b.vertex("b");
        b.edge(a2, bi)?;
    }
    for &o in &outside {
        b.path(a1, PathEnd::Existing(o), r, "p", "")?;
    }
    Ok(b.finish(inst, c))
}

/// `r`-perfect codes, offset `|O|`: a path of `2r` new vertices hangs off every vertex
/// outside `L`. Needs `L = U`.
pub fn be_kernel_perfect_code(inst: &AnnotatedInstance) -> Result<AnnotatedInstance> {
    expect(inst, &[Problem::PerfectCode])?;
    if inst.l != inst.u {
        return Err(Error::Input("perfect-code gadget needs L = U".into()));
    }
    let r = inst.params.r;
    let outside = inst.outside();
    let mut b = Builder::from(inst);
    for &o in &outside {
        b.path(o, PathEnd::Fresh, 2 * r, "p", "p")?;
    }
    Ok(b.finish(inst, outside.len()))
}

/// Applies the gadget matching the instance's problem.
pub fn be_kernel(inst: &AnnotatedInstance) -> Result<AnnotatedInstance> {
    match inst.problem {
        Problem::RcDom => be_kernel_rc_dom(inst),
        Problem::Total => be_kernel_total(inst),
        Problem::Roman => be_kernel_roman(inst),
        Problem::Scatter => be_kernel_scattered(inst),
        Problem::PerfectCode => be_kernel_perfect_code(inst),
        Problem::LambdaMu => Err(Error::Input("no plain-instance gadget for lambdamu".into())),
    }
}
