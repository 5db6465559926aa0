//! Hypothesis ratios for each estimate. Small ratios mean the input sits
//! comfortably inside the regime where the formula is sharp; nothing here
//! ever blocks a computation.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::degseq::{derive_stats, forbidden_stats, hat_stats, DegreePair, ForbiddenGraph};
use crate::estimate::{Context, RegularRange};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DiagnosticRecord {
    pub context: Context,
    pub ratios: BTreeMap<String, f64>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl DiagnosticRecord {
    fn new(context: Context) -> Self {
        Self {
            context,
            ratios: BTreeMap::new(),
            notes: Vec::new(),
        }
    }

    fn put(&mut self, name: &str, value: f64) {
        self.ratios.insert(name.to_string(), value);
    }

    fn note(&mut self, msg: impl Into<String>) {
        self.notes.push(msg.into());
    }

    pub fn ratio(&self, name: &str) -> Option<f64> {
        self.ratios.get(name).copied()
    }

    /// Largest reported ratio, if any.
    pub fn worst(&self) -> Option<f64> {
        self.ratios.values().copied().reduce(f64::max)
    }
}

pub fn assumption_report(dp: &DegreePair, x: Option<&ForbiddenGraph>, context: Context) -> DiagnosticRecord {
    let mut rec = DiagnosticRecord::new(context);
    let st = derive_stats(dp);
    if st.s_total == 0 {
        rec.note("S = 0: every ratio is undefined");
        return rec;
    }
    let s = st.s_total as f64;
    let (smax, tmax) = (st.s_max as f64, st.t_max as f64);
    let w = st.w.map(|w| w as f64);
    let empty = ForbiddenGraph::empty();
    let x = x.unwrap_or(&empty);
    let fs = match forbidden_stats(dp, x) {
        Ok(fs) => Some(fs),
        Err(e) => {
            rec.note(format!("forbidden set ignored: {e}"));
            None
        }
    };
    let f = fs.as_ref().map_or(0.0, |fs| fs.f as f64);
    let delta = fs.as_ref().map_or(smax * tmax, |fs| fs.delta_max as f64);
    let need_w = |rec: &mut DiagnosticRecord| {
        if w.is_none() {
            rec.note("m != n: W-dependent ratios omitted");
        }
        w
    };
    let zero_entries = dp.s().iter().chain(dp.t()).any(|&v| v == 0);

    let sparse = |rec: &mut DiagnosticRecord| rec.put("s_max*t_max/S^(2/3)", smax * tmax / s.powf(2.0 / 3.0));
    let logs = |rec: &mut DiagnosticRecord| rec.put("(s_max+t_max)*log(S)/S", (smax + tmax) * s.ln() / s);

    match context {
        Context::BipartiteCount => sparse(&mut rec),
        Context::Avoidance | Context::BipartiteAvoiding => {
            if context == Context::BipartiteAvoiding {
                sparse(&mut rec);
            }
            logs(&mut rec);
            rec.put("delta_max/S", delta / s);
            rec.put("delta_max*F/S^2", delta * f / (s * s));
            rec.put("F/S^(5/3)", f / s.powf(5.0 / 3.0));
        }
        Context::SubgraphProbability => match hat_stats(dp, x) {
            Ok(h) if h.s_hat > 0 => {
                let sh = h.s_hat as f64;
                let fh = h.f_hat as f64;
                let dh = h.delta_hat_max as f64;
                rec.put("(s_hat_max+t_hat_max)*log(S_hat)/S_hat", (h.s_hat_max + h.t_hat_max) as f64 * sh.ln() / sh);
                rec.put("delta_hat_max/S_hat", dh / sh);
                rec.put("delta_hat_max*F_hat/S_hat^2", dh * fh / (sh * sh));
                rec.put("F_hat/S_hat^(5/3)", fh / sh.powf(5.0 / 3.0));
            }
            Ok(_) => rec.note("S - |X| = 0"),
            Err(e) => rec.note(format!("{e}")),
        },
        Context::InitialBipartite => {
            rec.put("s_max*t_max/S", smax * tmax / s);
            logs(&mut rec);
            rec.put("(s_max+t_max)*F/S^2", (smax + tmax) * f / (s * s));
        }
        Context::LoopProbability => {
            logs(&mut rec);
            if let Some(w) = need_w(&mut rec) {
                rec.put("s_max*t_max*W/S^2", smax * tmax * w / (s * s));
            }
        }
        Context::LoopFree => sparse(&mut rec),
        Context::LoopFreeRegular => {
            sparse(&mut rec);
            let n = dp.n() as f64;
            rec.put("d/n^(1/2)", smax / n.sqrt());
        }
        Context::LoopFreeAvoiding => {
            logs(&mut rec);
            sparse(&mut rec);
            rec.put("delta_max/S", delta / s);
            if let Some(w) = need_w(&mut rec) {
                rec.put("delta_max*(F+W)/S^2", delta * (f + w) / (s * s));
            }
            rec.put("F/S^(3/5)", f / s.powf(3.0 / 5.0));
        }
        Context::TwoCycleBound => rec.put("(s_max+t_max)^2/S", (smax + tmax).powi(2) / s),
        Context::TwoCycleFree | Context::Oriented | Context::OrientedRegular => {
            if context != Context::TwoCycleFree {
                sparse(&mut rec);
            }
            rec.put("(s_max^2+t_max^2)/S", (smax * smax + tmax * tmax) / s);
            if let Some(w) = need_w(&mut rec) {
                rec.put("s_max*t_max*(s_max+t_max)*W/S^2", smax * tmax * (smax + tmax) * w / (s * s));
            }
            if context == Context::OrientedRegular {
                rec.put("d/n^(1/3)", smax / (dp.n() as f64).cbrt());
            }
        }
        Context::Undirected | Context::Orientations | Context::EulerianOrientations | Context::Pauling => {
            // undirected view d = s + t of a square pair
            if dp.is_square() {
                let d: Vec<u32> = dp.s().iter().zip(dp.t()).map(|(a, b)| a + b).collect();
                return undirected_assumption_report(&d, context);
            }
            rec.note("undirected contexts need a square pair or a degree vector");
        }
        Context::PermanentSparse => {
            sparse(&mut rec);
            let n = dp.n() as f64;
            rec.put("n/(S-n)", n / (s - n));
            if zero_entries {
                rec.note("zero entry in s or t");
            }
        }
        Context::PermanentDense => {
            sparse(&mut rec);
            rec.put("n/S", dp.n() as f64 / s);
        }
        Context::PermanentComplement => {
            let n = dp.n() as f64;
            rec.put("S/n", s / n);
            rec.put("(s_max+t_max)*S/n^2", (smax + tmax) * s / (n * n));
        }
        Context::PermanentRegular => {
            let n = dp.n();
            let d = dp.s_max() as usize;
            let regular = dp.is_square() && dp.s().iter().chain(dp.t()).all(|&v| v as usize == d);
            if !regular {
                rec.note("not a regular square pair");
            } else if d < 2 || d > n {
                rec.note("outside 2 <= d <= n");
            } else {
                rec.note("within range 2 <= d <= n");
                rec.note(format!("proof range: {:?}", RegularRange::classify(n, d)));
            }
        }
        Context::Exact => rec.note("exact value, no hypotheses"),
    }
    rec
}

/// Ratios for the undirected-graph contexts, from a degree vector.
pub fn undirected_assumption_report(d: &[u32], context: Context) -> DiagnosticRecord {
    let mut rec = DiagnosticRecord::new(context);
    let total: f64 = d.iter().map(|&x| x as f64).sum();
    if total == 0.0 {
        rec.note("D = 0: every ratio is undefined");
        return rec;
    }
    let dmax = d.iter().copied().max().unwrap_or(0) as f64;
    rec.put("d_max^4/D", dmax.powi(4) / total);
    if context == Context::Pauling {
        rec.put("d_max^4/(n*D)", dmax.powi(4) / (d.len() as f64 * total));
    }
    rec
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn avoidance_matching() {
        let rec = assumption_report(
            &DegreePair::regular(100, 1),
            Some(&ForbiddenGraph::diagonal(100)),
            Context::Avoidance,
        );
        assert!((rec.ratio("(s_max+t_max)*log(S)/S").unwrap() - 0.0921).abs() < 1e-4);
        assert!((rec.ratio("delta_max*F/S^2").unwrap() - 0.03).abs() < 1e-12);
        assert!((rec.ratio("F/S^(5/3)").unwrap() - 0.0464).abs() < 1e-4);
    }

    #[test]
    fn loopfree_regular_ratio() {
        let rec = assumption_report(&DegreePair::regular(50, 2), None, Context::LoopFree);
        assert!((rec.ratio("s_max*t_max/S^(2/3)").unwrap() - 0.1857).abs() < 1e-4);
    }

    #[test]
    fn full_permanent_range() {
        let rec = assumption_report(&DegreePair::regular(7, 7), None, Context::PermanentRegular);
        assert!(rec.ratios.is_empty());
        assert_eq!(rec.notes[0], "within range 2 <= d <= n");
    }

    #[test]
    fn never_fails() {
        let dp = DegreePair::new(vec![2, 1], vec![3]).unwrap();
        let x = ForbiddenGraph::new([(5, 5)]).unwrap();
        for c in Context::ALL {
            let _ = assumption_report(&dp, Some(&x), c);
        }
        let empty = DegreePair::new(vec![0], vec![0]).unwrap();
        assert!(assumption_report(&empty, None, Context::BipartiteCount).ratios.is_empty());
    }

    #[test]
    fn undirected_ratio() {
        let rec = undirected_assumption_report(&[2; 8], Context::EulerianOrientations);
        assert_eq!(rec.ratio("d_max^4/D"), Some(1.0));
    }
}
