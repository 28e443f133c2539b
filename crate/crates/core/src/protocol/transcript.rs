use std::fmt::Write as _;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::frame::sample_frame_audited;
use super::{
    decode_classical, decode_quantum, encode_shares, quantum_layout, rate_report, server_compute,
    InstanceData, Mode, PrivacyReport, ProtocolConfig, RateReport, Share,
};
use crate::degree_tables::to_record;
use crate::error::Result;
use crate::gf::FMatrix;
use crate::grs::EvalFrame;

/// Keeps the data stream independent of the frame sampler, which is seeded
/// from the same `seed`.
const DATA_STREAM: u64 = 0xda7a;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InstanceTranscript {
    pub a_blocks: Vec<FMatrix>,
    pub b_blocks: Vec<FMatrix>,
    pub noise_a: Vec<FMatrix>,
    pub noise_b: Vec<FMatrix>,
    pub shares: Vec<Share>,
    pub responses: Vec<FMatrix>,
    pub decoded: FMatrix,
    pub direct: FMatrix,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Transcript {
    pub p: u64,
    pub plan_record: String,
    pub mode: Mode,
    pub frame: EvalFrame,
    pub instances: Vec<InstanceTranscript>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimulationOutcome {
    pub transcript: Transcript,
    pub decode_ok: bool,
    pub privacy: PrivacyReport,
    pub rate: RateReport,
    /// `m g = 0`, `m h = I` and SSO of `g`; only for two-instance runs.
    pub transfer_laws: Option<bool>,
}

impl SimulationOutcome {
    pub fn passed(&self) -> bool {
        self.decode_ok && self.privacy.passed() && self.transfer_laws.unwrap_or(true)
    }
}

pub fn simulate(cfg: &ProtocolConfig) -> Result<SimulationOutcome> {
    let (frame, privacy) = sample_frame_audited(cfg)?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ DATA_STREAM);
    let mut data = Vec::new();
    let mut responses = Vec::new();
    let mut shares = Vec::new();
    for _ in 0..cfg.mode.instances() {
        let d = InstanceData::random(cfg, &mut rng);
        let s = encode_shares(cfg, &frame, &d)?;
        let r = s
            .iter()
            .map(|x| server_compute(&cfg.ctx, x))
            .collect::<Result<Vec<_>>>()?;
        data.push(d);
        shares.push(s);
        responses.push(r);
    }
    let (decoded, transfer_laws) = match cfg.mode {
        Mode::Classical => (vec![decode_classical(cfg, &frame, &responses[0])?], None),
        Mode::Quantum => {
            let layout = quantum_layout(cfg, &frame)?;
            let laws = layout.sso && layout.transfer.laws_hold(&cfg.ctx);
            let (d1, d2) = decode_quantum(cfg, &frame, &responses[0], &responses[1])?;
            (vec![d1, d2], Some(laws))
        }
    };
    let mut instances = Vec::new();
    for (((d, s), r), dec) in data.into_iter().zip(shares).zip(responses).zip(decoded) {
        let direct = d.a.mul(&cfg.ctx, &d.b)?;
        instances.push(InstanceTranscript {
            a_blocks: d.a_blocks(cfg.plan.k),
            b_blocks: d.b_blocks(cfg.plan.l),
            noise_a: d.noise_a,
            noise_b: d.noise_b,
            shares: s,
            responses: r,
            decoded: dec,
            direct,
        });
    }
    let decode_ok = instances.iter().all(|i| i.decoded == i.direct);
    Ok(SimulationOutcome {
        transcript: Transcript {
            p: cfg.ctx.modulus(),
            plan_record: to_record(&cfg.plan),
            mode: cfg.mode,
            frame,
            instances,
        },
        decode_ok,
        privacy,
        rate: rate_report(&cfg.plan, cfg.mode),
        transfer_laws,
    })
}

fn matrix(m: &FMatrix) -> String {
    let body: Vec<String> = m
        .to_rows()
        .iter()
        .map(|r| r.iter().map(u64::to_string).collect::<Vec<_>>().join(" "))
        .collect();
    format!("{}x{} [{}]", m.rows(), m.cols(), body.join("; "))
}

fn numbers(v: &[u64]) -> String {
    v.iter().map(u64::to_string).collect::<Vec<_>>().join(" ")
}

impl Transcript {
    /// Line-oriented dump suitable for snapshot comparison.
    pub fn export(&self) -> String {
        let mut out = String::new();
        let mode = match self.mode {
            Mode::Classical => "classical",
            Mode::Quantum => "quantum",
        };
        let _ = writeln!(out, "field {}", self.p);
        let _ = writeln!(out, "mode {mode}");
        let _ = writeln!(out, "plan {}", self.plan_record);
        let _ = writeln!(out, "points {}", numbers(&self.frame.points));
        let _ = writeln!(out, "u {}", numbers(&self.frame.u));
        let _ = writeln!(out, "v {}", numbers(&self.frame.v));
        let _ = writeln!(out, "shift {} {}", self.frame.shift_l1, self.frame.shift_l2);
        for (m, inst) in self.instances.iter().enumerate() {
            let m = m + 1;
            for (k, b) in inst.a_blocks.iter().enumerate() {
                let _ = writeln!(out, "instance {m} A{} {}", k + 1, matrix(b));
            }
            for (l, b) in inst.b_blocks.iter().enumerate() {
                let _ = writeln!(out, "instance {m} B{} {}", l + 1, matrix(b));
            }
            for (t, b) in inst.noise_a.iter().enumerate() {
                let _ = writeln!(out, "instance {m} R{} {}", t + 1, matrix(b));
            }
            for (t, b) in inst.noise_b.iter().enumerate() {
                let _ = writeln!(out, "instance {m} S{} {}", t + 1, matrix(b));
            }
            for (n, (s, r)) in inst.shares.iter().zip(&inst.responses).enumerate() {
                let _ = writeln!(
                    out,
                    "instance {m} server {} f {} g {} response {}",
                    n + 1,
                    matrix(&s.f),
                    matrix(&s.g),
                    matrix(r)
                );
            }
            let _ = writeln!(out, "instance {m} decoded {}", matrix(&inst.decoded));
            let _ = writeln!(out, "instance {m} direct {}", matrix(&inst.direct));
        }
        out
    }
}
