//! End-to-end checks: original instance against bikernel and gadget kernel,
//! decided by the exact oracle for every budget in a range.

use std::ops::RangeInclusive;

use rayon::prelude::*;

use crate::constants::{EmpiricalConstants, Metric};
use crate::cores::CoreOptions;
use crate::error::Result;
use crate::graph::Graph;
use crate::kernels::{accepts, be_kernel, reduce, AnnotatedInstance, Params, Problem};
use crate::oracle::Oracle;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AgreementRow {
    pub k: usize,
    pub original: bool,
    pub bikernel: bool,
    /// `None` for problems without a gadget.
    pub be_kernel: Option<bool>,
    pub early_exit: bool,
}

impl AgreementRow {
    pub fn agrees(&self) -> bool {
        self.bikernel == self.original && self.be_kernel.is_none_or(|b| b == self.original)
    }
}

/// Optimum of the annotated kernel against the gadget graph built from it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OffsetCheck {
    pub annotated: Option<usize>,
    pub plain: Option<usize>,
    pub offset: usize,
}

impl OffsetCheck {
    /// Finite optima differ by exactly the offset; infeasibility is shared.
    pub fn holds(&self) -> bool {
        match (self.annotated, self.plain) {
            (Some(a), Some(p)) => p == a + self.offset,
            (None, None) => true,
            _ => false,
        }
    }
}

#[derive(Clone, Debug)]
pub struct PipelineReport {
    pub name: String,
    pub problem: Problem,
    pub params: Params,
    pub n: usize,
    pub original_opt: Option<usize>,
    pub kernel_n: Option<usize>,
    pub core_n: usize,
    pub gadget_n: Option<usize>,
    pub offset: Option<OffsetCheck>,
    pub rows: Vec<AgreementRow>,
    pub constants: EmpiricalConstants,
}

impl PipelineReport {
    pub fn agreed(&self) -> bool {
        self.rows.iter().all(AgreementRow::agrees) && self.offset.as_ref().is_none_or(OffsetCheck::holds)
    }

    /// Machine-readable summary, one `key=value` group per line.
    pub fn lines(&self) -> Vec<String> {
        let opt = |o: Option<usize>| o.map_or("infeasible".to_string(), |v| v.to_string());
        let p = self.params;
        let mut out = vec![format!(
            "instance={} problem={} r={} c={} lambda={} mu={} n={} opt={} core={} kernel={} gadget={}",
            self.name,
            self.problem,
            p.r,
            p.c,
            p.lambda,
            p.mu,
            self.n,
            opt(self.original_opt),
            self.core_n,
            self.kernel_n.map_or("-".into(), |v| v.to_string()),
            self.gadget_n.map_or("-".into(), |v| v.to_string()),
        )];
        if let Some(o) = &self.offset {
            out.push(format!(
                "offset annotated={} plain={} declared={} holds={}",
                opt(o.annotated),
                opt(o.plain),
                o.offset,
                o.holds()
            ));
        }
        for row in &self.rows {
            let be = row.be_kernel.map_or("-".to_string(), |b| b.to_string());
            out.push(format!(
                "k={} original={} bikernel={} be_kernel={} early_exit={} agree={}",
                row.k,
                row.original,
                row.bikernel,
                be,
                row.early_exit,
                row.agrees()
            ));
        }
        out.extend(self.constants.report_lines());
        out.push(format!("agreement={}", self.agreed()));
        out
    }
}

fn answer(inst: &AnnotatedInstance, oracle: &Oracle) -> Result<Option<usize>> {
    Ok(inst.optimum(oracle)?.optimum)
}

/// Runs bikernel and gadget kernel for every `k` in `ks` and compares oracle answers.
pub fn verify_pipeline(
    name: &str,
    g: &Graph,
    problem: Problem,
    params: Params,
    ks: RangeInclusive<usize>,
    oracle: &Oracle,
    opts: &CoreOptions,
) -> Result<PipelineReport> {
    let original = AnnotatedInstance::plain(g.clone(), problem, params, 0);
    let original_opt = answer(&original, oracle)?;
    let red = reduce(g, problem, params, opts)?;
    let has_gadget = problem != Problem::LambdaMu;

    let mut constants = EmpiricalConstants::new();
    let (mut kernel_opt, mut gadget_opt, mut offset, mut gadget_n) = (None, None, None, None);
    if let Some(kernel) = &red.kernel {
        kernel_opt = Some(answer(kernel, oracle)?);
        if let Some(opt) = original_opt {
            constants.record(Metric::KernelSizePerK, kernel.graph.n(), opt, name);
        }
        if has_gadget {
            let plain = be_kernel(kernel)?;
            gadget_n = Some(plain.graph.n());
            let plain_opt = answer(&plain, oracle)?;
            gadget_opt = Some(plain_opt);
            offset = Some(OffsetCheck {
                annotated: kernel_opt.flatten(),
                plain: plain_opt,
                offset: plain.offset,
            });
        }
    }

    let mut rows = Vec::new();
    for k in ks {
        let bk = red.for_budget(k);
        let orig = accepts(problem, original_opt, k);
        let (bikernel, be) = match (&bk.exit, kernel_opt) {
            (None, Some(kopt)) => {
                let be = gadget_opt.map(|gopt| accepts(problem, gopt, k + offset.as_ref().map_or(0, |o| o.offset)));
                (accepts(problem, kopt, k), be)
            }
            _ => {
                let fixture = &bk.instance;
                let be = if has_gadget {
                    let plain = be_kernel(fixture)?;
                    Some(plain.decide(oracle)?)
                } else {
                    None
                };
                (fixture.decide(oracle)?, be)
            }
        };
        rows.push(AgreementRow {
            k,
            original: orig,
            bikernel,
            be_kernel: be,
            early_exit: bk.exit.is_some(),
        });
    }
    Ok(PipelineReport {
        name: name.to_string(),
        problem,
        params,
        n: g.n(),
        original_opt,
        kernel_n: red.kernel.as_ref().map(|k| k.graph.n()),
        core_n: red.core.len(),
        gadget_n,
        offset,
        rows,
        constants,
    })
}

/// One suite entry.
#[derive(Clone, Debug)]
pub struct Case {
    pub name: String,
    pub graph: Graph,
    pub problem: Problem,
    pub params: Params,
}

/// Runs [`verify_pipeline`] over `cases` in parallel with `k ∈ [0, n]`.
pub fn verify_suite(cases: &[Case], oracle: &Oracle, opts: &CoreOptions) -> Vec<Result<PipelineReport>> {
    cases
        .par_iter()
        .map(|c| verify_pipeline(&c.name, &c.graph, c.problem, c.params, 0..=c.graph.n(), oracle, opts))
        .collect()
}
