use rayon::prelude::*;
use stepbias_core::regime::certify;
use stepbias_core::Certificate;

use crate::config::ExperimentConfig;
use crate::csvio::Table;
use crate::error::Result;
use crate::seeds::stream;
use crate::synth::{certify_instance, CertifyInstance};

#[derive(Debug, Clone)]
pub struct CertifyRow {
    pub index: usize,
    pub instance: CertifyInstance,
    pub certificate: Certificate,
    /// Stopping step `t` with `t ≥ t₁` and `t₂ ≤ t ≤ t₃` for the matching rate.
    pub in_window_s: bool,
    pub in_window_b: bool,
}

/// Certificates for `cfg.instances` random problem pairs, one named stream each.
pub fn quadratic_certify(cfg: &ExperimentConfig) -> Result<Vec<CertifyRow>> {
    (0..cfg.instances)
        .into_par_iter()
        .map(|index| {
            let mut rng = stream(cfg.seed, &format!("certify/{index}"));
            let instance = certify_instance(cfg.max_dim, cfg.t_max, &mut rng)?;
            let c = certify(&instance.pair, &instance.run_s, &instance.run_b, instance.alpha)?;
            let in_window_s = c.window_s.contains(c.steps_s);
            let in_window_b = c.window_b.contains(c.steps_b);
            Ok(CertifyRow { index, instance, certificate: c, in_window_s, in_window_b })
        })
        .collect()
}

pub(super) fn table(rows: &[CertifyRow]) -> Table {
    let Some(first) = rows.first() else {
        return Table::new(["instance"]);
    };
    let keys = first.certificate.to_record().into_iter().map(|(k, _)| k.to_string());
    let mut t = Table::new(
        ["instance".to_string(), "rejected".to_string()]
            .into_iter()
            .chain(keys)
            .chain(["in_window_s".to_string(), "in_window_b".to_string()]),
    );
    for r in rows {
        let mut row = vec![r.index.to_string(), r.instance.rejected.to_string()];
        row.extend(r.certificate.to_record().into_iter().map(|(_, v)| v));
        row.push(r.in_window_s.to_string());
        row.push(r.in_window_b.to_string());
        t.push(row);
    }
    t
}

/// Description of every instance whose assumptions or verdict failed.
pub(super) fn failure_summary(rows: &[CertifyRow]) -> Option<String> {
    let mut parts = Vec::new();
    for r in rows {
        let c = &r.certificate;
        let a = &c.assumptions;
        let mut failed = Vec::new();
        for (ok, name) in [
            (a.distinct_eigenvalues, "distinct_eigenvalues"),
            (a.rate_ordering, "rate_ordering"),
            (a.nonzero_init, "nonzero_init"),
            (a.alpha_below_alpha_1, "alpha_below_alpha_1"),
            (a.model_error_ok, "model_error"),
        ] {
            if !ok {
                failed.push(name.to_string());
            }
        }
        if let Some(reason) = c.failure {
            failed.push(reason.as_str().to_string());
        }
        if !failed.is_empty() {
            parts.push(format!("instance {}: {}", r.index, failed.join(", ")));
        }
    }
    (!parts.is_empty()).then(|| parts.join("; "))
}
