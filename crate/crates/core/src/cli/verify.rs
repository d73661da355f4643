//! Identity checkers run by `chromod verify`.

use clap::ValueEnum;

use crate::dyck::{enumerate, Hess};
use crate::engine::{self, Engine};
use crate::error::{Error, Result};
use crate::{analysis, network, oracle, qhit};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    All,
    Basicrel,
    Basicreldual,
    Cv,
    Rjm,
    Rjrel,
    RjrelSwapped,
    QhitThm,
    NetworkEq,
    Transpose,
    Palindromic,
    AlphaChi,
}

#[derive(Debug, Default)]
pub struct SuiteResult {
    pub cases: usize,
    pub failed: usize,
    pub examples: Vec<String>,
}

impl SuiteResult {
    fn record(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failed += 1;
            if self.examples.len() < 10 {
                self.examples.push(what());
            }
        }
    }
}

/// Skips instances whose hypotheses fail; propagates any other error.
fn admissible(r: Result<bool>) -> Result<Option<bool>> {
    match r {
        Ok(b) => Ok(Some(b)),
        Err(Error::RelationConditions(_)) | Err(Error::Precondition(_)) => Ok(None),
        Err(e) => Err(e),
    }
}

fn all_hess(max_n: usize) -> Result<Vec<Hess>> {
    let mut out = Vec::new();
    for n in 1..=max_n {
        out.extend(enumerate(n)?);
    }
    Ok(out)
}

pub fn run_suite(suite: Suite, max_n: usize, engine: &Engine) -> Result<SuiteResult> {
    let mut res = SuiteResult::default();
    let board_max = max_n.min(5);
    match suite {
        Suite::All => {
            return Err(Error::Precondition("run the suites one at a time".into()));
        }
        Suite::Basicrel => {
            for h in all_hess(max_n)? {
                let n = h.n();
                for i in 1..n {
                    for j in i + 1..=n {
                        if let Some(ok) = admissible(engine::verify_relation_basic(&h, i, j))? {
                            res.record(ok, || format!("{h} i={i} j={j}"));
                        }
                    }
                }
            }
        }
        Suite::Basicreldual => {
            for h in all_hess(max_n)? {
                let n = h.n();
                for i in 1..=n {
                    for a in 1..h.at(i) {
                        if let Some(ok) = admissible(engine::verify_relation_basic_dual(&h, i, a))? {
                            res.record(ok, || format!("{h} i={i} a={a}"));
                        }
                    }
                }
            }
        }
        Suite::Cv => {
            for h in all_hess(max_n)? {
                let n = h.n();
                for i in 1..n {
                    for j in i + 1..=n {
                        for a in 1..=n {
                            for b in 1..=n {
                                if let Some(ok) = admissible(engine::verify_chu_vandermonde(&h, i, j, a, b))? {
                                    res.record(ok, || format!("{h} i={i} j={j} a={a} b={b}"));
                                }
                            }
                        }
                    }
                }
            }
        }
        Suite::Rjm => {
            for m in 1..=board_max {
                for lam in qhit::partitions_in_box(m) {
                    for j in 0..m {
                        if let Some(ok) = admissible(qhit::verify_rjm(j, m, &lam))? {
                            res.record(ok, || format!("j={j} m={m} {lam}"));
                        }
                    }
                }
            }
        }
        Suite::Rjrel => {
            for m in 1..=board_max {
                for lam in qhit::partitions_in_box(m) {
                    for i in 1..=lam.len() {
                        for j in 0..=m {
                            if let Some(ok) = admissible(qhit::verify_rjrel(j, m, &lam, i))? {
                                res.record(ok, || format!("j={j} m={m} {lam} corner {i}"));
                            }
                        }
                    }
                }
            }
        }
        Suite::RjrelSwapped => {
            for m in 1..=board_max {
                for lam in qhit::partitions_in_box(m) {
                    for i in 1..=lam.len() {
                        for j in 0..=m {
                            if let Some(ok) = admissible(qhit::verify_rjrel_swapped(j, m, &lam, i))? {
                                res.record(ok, || format!("j={j} m={m} {lam} corner {i}"));
                            }
                        }
                    }
                }
            }
        }
        Suite::QhitThm => {
            for h in all_hess(max_n)?.into_iter().filter(Hess::is_abelian) {
                let ok = qhit::csf_abelian_qhit(&h)? == engine.csf_e(&h)?;
                res.record(ok, || h.to_string());
            }
        }
        Suite::NetworkEq => {
            for h in all_hess(max_n)?.into_iter().filter(Hess::is_abelian) {
                let ok = network::network_expansion(&h)? == engine.expand(&h)?;
                res.record(ok, || h.to_string());
            }
        }
        Suite::Transpose => {
            for h in all_hess(max_n)? {
                let ok = engine.expand(&h.transpose())? == engine.expand(&h)?;
                res.record(ok, || h.to_string());
            }
        }
        Suite::Palindromic => {
            for h in all_hess(max_n)? {
                let f = engine.csf_e(&h)?;
                let two_k = h.area();
                let ok = f.polynomial_coeffs()?.iter().all(|(_, c)| analysis::is_palindromic(c, two_k));
                res.record(ok, || h.to_string());
            }
        }
        Suite::AlphaChi => {
            for h in all_hess(max_n)? {
                let ok = oracle::alpha_apply(&engine.csf_e(&h)?)? == oracle::chromatic_poly_q(&h);
                res.record(ok, || h.to_string());
            }
        }
    }
    Ok(res)
}
