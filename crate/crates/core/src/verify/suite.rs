use rayon::prelude::*;

use super::checks::{check_gap_bound, check_mapping, check_reduction_identity, check_symmetry_matrix};
use super::report::CheckReport;
use super::weyl::weyl_zero_residual;
use crate::arithmetic::Flux;
use crate::error::{Error, Result};
use crate::operators::{build_general_1d, build_lieb_1d, build_lieb_2d_torus, Boundary, GeneralCouplings, GeneralParams, LiebParams};
use crate::spectra::DEFAULT_GRID;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Reduction,
    Symmetry,
    Weyl,
    Mapping,
    GapBound,
    All,
}

impl Suite {
    pub fn parse(s: &str) -> Option<Suite> {
        Some(match s {
            "reduction" => Suite::Reduction,
            "symmetry" => Suite::Symmetry,
            "weyl" => Suite::Weyl,
            "mapping" => Suite::Mapping,
            "gap" | "gap-bound" => Suite::GapBound,
            "all" => Suite::All,
            _ => return None,
        })
    }
}

/// Parameters shared by the suites; `None` means the built-in sweep.
#[derive(Clone, Debug, Default)]
pub struct SuiteConfig {
    pub t: Option<f64>,
    pub alpha: Option<Flux>,
    pub theta: Option<f64>,
    pub n: Option<usize>,
}

impl SuiteConfig {
    fn ts(&self) -> Vec<f64> {
        self.t.map_or(vec![0.5, 1.0, 2.0], |t| vec![t])
    }

    fn alphas(&self) -> Vec<Flux> {
        self.alpha.clone().map_or_else(
            || vec![Flux::golden(), Flux::rational(1, 3).expect("1/3"), Flux::e_minus_2()],
            |a| vec![a],
        )
    }

    fn thetas(&self) -> Vec<f64> {
        self.theta.map_or(vec![0.0, 0.13], |th| vec![th])
    }
}

type Job = Box<dyn Fn() -> Result<CheckReport> + Send + Sync>;

fn jobs(suite: Suite, cfg: &SuiteConfig) -> Result<Vec<Job>> {
    let mut out: Vec<Job> = Vec::new();
    let n = cfg.n.unwrap_or(200);
    let want = |s: Suite| suite == s || suite == Suite::All;
    if want(Suite::Reduction) {
        for a in cfg.alphas() {
            for th in cfg.thetas() {
                for t in cfg.ts() {
                    let p = LiebParams::new(a.clone(), th, t)?;
                    out.push(Box::new(move || check_reduction_identity(&p, n)));
                }
            }
        }
    }
    if want(Suite::Symmetry) {
        for t in cfg.ts() {
            let a = cfg.alpha.clone().unwrap_or_else(Flux::golden);
            let th = cfg.theta.unwrap_or(0.13);
            let p = LiebParams::new(a.clone(), th, t)?;
            let n1 = cfg.n.unwrap_or(50);
            out.push(Box::new(move || {
                let m = build_lieb_1d(&p, n1, Boundary::Open)?;
                check_symmetry_matrix(&m, serde_json::json!({"model": "lieb", "alpha": p.alpha.label(), "theta": p.theta, "t": p.t, "N": n1}))
            }));
            let g = GeneralParams::new(a, th, GeneralCouplings::new(t, 1.3, 0.9)?)?;
            out.push(Box::new(move || {
                let m = build_general_1d(&g, n1, Boundary::Open)?;
                check_symmetry_matrix(&m, serde_json::json!({"model": "general", "alpha": g.alpha.label(), "t2": g.couplings.t2, "t3": 1.3, "t4": 0.9, "N": n1}))
            }));
            out.push(Box::new(move || {
                let m = build_lieb_2d_torus(1, 3, t, 6, 4)?;
                check_symmetry_matrix(&m, serde_json::json!({"model": "lieb2d", "p": 1, "q": 3, "t": t, "Lx": 6, "Ly": 4}))
            }));
        }
    }
    if want(Suite::Weyl) {
        let a = cfg.alpha.clone().unwrap_or_else(Flux::golden);
        let p = LiebParams::new(a, cfg.theta.unwrap_or(0.0), cfg.t.unwrap_or(1.0))?;
        for k in [10u64, 100, 1000, 10_000] {
            let p = p.clone();
            out.push(Box::new(move || Ok(weyl_zero_residual(&p, k)?.report)));
        }
    }
    if want(Suite::Mapping) {
        let cases: Vec<(u64, u64, f64)> = match cfg.t {
            Some(t) => vec![(1, 2, t), (1, 3, t), (2, 5, t), (3, 7, t)],
            None => vec![(1, 2, 1.0), (1, 3, 0.8), (2, 5, 0.8), (3, 7, 1.5)],
        };
        for (p, q, t) in cases {
            out.push(Box::new(move || check_mapping(p, q, t, DEFAULT_GRID)));
        }
    }
    if want(Suite::GapBound) {
        for t in cfg.ts() {
            let lambda = t.powi(-2);
            for (p, q) in [(1u64, 2u64), (1, 3), (2, 5), (3, 7)] {
                out.push(Box::new(move || check_gap_bound(p, q, lambda)));
            }
        }
    }
    if out.is_empty() {
        return Err(Error::Config("suite selected no checks".into()));
    }
    Ok(out)
}

/// Runs the checks of `suite` concurrently; reports are ordered by check name
/// and then by submission order.
pub fn run_suite(suite: Suite, cfg: &SuiteConfig) -> Result<Vec<CheckReport>> {
    let jobs = jobs(suite, cfg)?;
    let mut reports: Vec<(usize, CheckReport)> =
        jobs.par_iter().enumerate().map(|(i, job)| job().map(|r| (i, r))).collect::<Result<_>>()?;
    reports.sort_by(|a, b| a.1.check.cmp(&b.1.check).then(a.0.cmp(&b.0)));
    Ok(reports.into_iter().map(|(_, r)| r).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduction_suite_passes() {
        let cfg = SuiteConfig { t: Some(0.5), ..Default::default() };
        let r = run_suite(Suite::Reduction, &cfg).unwrap();
        assert_eq!(r.len(), 6);
        assert!(r.iter().all(|c| c.pass));
    }

    #[test]
    fn ordering_is_by_check_name() {
        let cfg = SuiteConfig { t: Some(1.0), n: Some(20), ..Default::default() };
        let r = run_suite(Suite::All, &cfg).unwrap();
        let names: Vec<&str> = r.iter().map(|c| c.check.as_str()).collect();
        let mut sorted = names.clone();
        sorted.sort();
        assert_eq!(names, sorted);
        assert!(r.iter().all(|c| c.pass), "{:?}", r.iter().filter(|c| !c.pass).collect::<Vec<_>>());
    }

    #[test]
    fn parse_names() {
        assert_eq!(Suite::parse("gap"), Some(Suite::GapBound));
        assert_eq!(Suite::parse("nope"), None);
    }
}
