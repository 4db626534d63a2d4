//! Extremal weight vector w⁺ and the separation indices θ and η.
//!
//! With `X = ν_w(a) − ν_w(b)` for `a` uniform on A and `b` uniform on B,
//! `E(X) = w·u / M` where `u = Σ_A Σ_B (μ(a) − μ(b))` and `M = #A·#B`; the
//! unit vector along `u` maximizes it. All moments here are computed by
//! enumerating every pair, never by sampling.

use serde::{Deserialize, Serialize};

use crate::error::{Degeneracy, Error, Result};
use crate::model::{NormSpec, Profile};

/// Profiles of one side (A or B) of a comparison. Duplicates are kept.
#[derive(Debug, Clone, PartialEq)]
pub struct CodeSetProfiles {
    pub label: String,
    profiles: Vec<Profile>,
    ids: Vec<String>,
}

impl CodeSetProfiles {
    pub fn new(label: impl Into<String>, profiles: Vec<Profile>, ids: Vec<String>) -> Result<Self> {
        let Some(first) = profiles.first() else {
            return Err(Error::domain("a code set needs at least one profile"));
        };
        if ids.len() != profiles.len() {
            return Err(Error::domain("one id per profile required"));
        }
        if profiles.iter().any(|p| p.names() != first.names()) {
            return Err(Error::domain("profiles in a set must share measure names"));
        }
        Ok(Self {
            label: label.into(),
            profiles,
            ids,
        })
    }

    /// Set of anonymous profiles, ids `label0`, `label1`, ...
    pub fn from_profiles(label: impl Into<String>, profiles: Vec<Profile>) -> Result<Self> {
        let label = label.into();
        let ids = (0..profiles.len()).map(|i| format!("{label}{i}")).collect();
        Self::new(label, profiles, ids)
    }

    pub fn profiles(&self) -> &[Profile] {
        &self.profiles
    }

    pub fn ids(&self) -> &[String] {
        &self.ids
    }

    pub fn len(&self) -> usize {
        self.profiles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.profiles.is_empty()
    }

    pub fn dimension(&self) -> usize {
        self.profiles[0].len()
    }

    pub fn measure_names(&self) -> &[String] {
        self.profiles[0].names()
    }
}

fn check_dims(a: &CodeSetProfiles, b: &CodeSetProfiles) -> Result<()> {
    if a.measure_names() != b.measure_names() {
        return Err(Error::domain("A and B profiles use different measures"));
    }
    Ok(())
}

fn check_weight(w: &[f64], n: usize) -> Result<()> {
    if w.len() != n {
        return Err(Error::domain(format!("weight has {} components, profile {n}", w.len())));
    }
    Ok(())
}

/// `u = Σ_{a∈A} Σ_{b∈B} (μ(a) − μ(b))`, computed pair by pair and checked
/// against the closed form `#B·Σ_A μ − #A·Σ_B μ`.
pub fn u_vector(a: &CodeSetProfiles, b: &CodeSetProfiles) -> Result<Vec<f64>> {
    check_dims(a, b)?;
    let n = a.dimension();
    let mut u = vec![0.0; n];
    for pa in a.profiles() {
        for pb in b.profiles() {
            for (ui, (x, y)) in u.iter_mut().zip(pa.values().iter().zip(pb.values())) {
                *ui += x - y;
            }
        }
    }
    let closed = u_closed_form(a, b);
    let tol = 1e-12 * (a.len() * b.len()).max(1) as f64;
    if let Some(i) = (0..n).find(|&i| (u[i] - closed[i]).abs() > tol) {
        return Err(Error::domain(format!(
            "u component {i}: pairwise sum {} disagrees with closed form {}",
            u[i], closed[i]
        )));
    }
    Ok(u)
}

fn u_closed_form(a: &CodeSetProfiles, b: &CodeSetProfiles) -> Vec<f64> {
    let n = a.dimension();
    let sum = |s: &CodeSetProfiles| {
        let mut acc = vec![0.0; n];
        for p in s.profiles() {
            for (x, v) in acc.iter_mut().zip(p.values()) {
                *x += v;
            }
        }
        acc
    };
    let (sa, sb) = (sum(a), sum(b));
    let (na, nb) = (a.len() as f64, b.len() as f64);
    sa.iter().zip(&sb).map(|(x, y)| nb * x - na * y).collect()
}

/// `w⁺ = u / ‖u‖`.
pub fn fingerprint(u: &[f64], norm: NormSpec) -> Result<Vec<f64>> {
    let len = norm.norm(u);
    if len == 0.0 || u.is_empty() {
        return Err(Error::Degenerate(Degeneracy::IdenticalProfiles));
    }
    Ok(u.iter().map(|x| x / len).collect())
}

/// `ν_w(μ) = w · μ`.
pub fn nu(w: &[f64], profile: &Profile) -> Result<f64> {
    check_weight(w, profile.len())?;
    Ok(dot(w, profile.values()))
}

fn dot(w: &[f64], v: &[f64]) -> f64 {
    w.iter().zip(v).map(|(a, b)| a * b).sum()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SeparationStats {
    /// E(X).
    pub mean: f64,
    /// E(X²).
    pub second_moment: f64,
    /// σ_A² = E((X − E(X))²).
    pub variance: f64,
}

/// Moments of `X = ν_w(a) − ν_w(b)` over all `#A·#B` pairs.
pub fn separation_stats(a: &CodeSetProfiles, b: &CodeSetProfiles, w: &[f64]) -> Result<SeparationStats> {
    check_dims(a, b)?;
    check_weight(w, a.dimension())?;
    let nu_a: Vec<f64> = a.profiles().iter().map(|p| dot(w, p.values())).collect();
    let nu_b: Vec<f64> = b.profiles().iter().map(|p| dot(w, p.values())).collect();
    let pairs = (nu_a.len() * nu_b.len()) as f64;
    let xs = || nu_a.iter().flat_map(|x| nu_b.iter().map(move |y| x - y));
    let mean = xs().sum::<f64>() / pairs;
    let second_moment = xs().map(|x| x * x).sum::<f64>() / pairs;
    let variance = xs().map(|x| (x - mean) * (x - mean)).sum::<f64>() / pairs;

    let u = u_vector(a, b)?;
    let identity = dot(w, &u) / pairs;
    let scale = 1.0 + w.iter().map(|x| x.abs()).sum::<f64>();
    if (identity - mean).abs() > 1e-12 * scale {
        return Err(Error::domain(format!(
            "E(X) = {mean} disagrees with w·u/M = {identity}"
        )));
    }
    Ok(SeparationStats {
        mean,
        second_moment,
        variance,
    })
}

/// Expected separation `E(X) = w·u / M` for an arbitrary weight.
pub fn expected_separation(a: &CodeSetProfiles, b: &CodeSetProfiles, w: &[f64]) -> Result<f64> {
    Ok(separation_stats(a, b, w)?.mean)
}

/// Second moment of `Y = ν_w(c_i) − ν_w(c_j)`, with `c_i`, `c_j` drawn
/// independently with replacement from the multiset union of A and B.
/// Returns `(E(Y), E(Y²))`.
pub fn union_spread(a: &CodeSetProfiles, b: &CodeSetProfiles, w: &[f64]) -> Result<(f64, f64)> {
    check_dims(a, b)?;
    check_weight(w, a.dimension())?;
    let nus: Vec<f64> = a
        .profiles()
        .iter()
        .chain(b.profiles())
        .map(|p| dot(w, p.values()))
        .collect();
    let pairs = (nus.len() * nus.len()) as f64;
    let ys = || nus.iter().flat_map(|x| nus.iter().map(move |y| x - y));
    let mean = ys().sum::<f64>() / pairs;
    let second = ys().map(|y| y * y).sum::<f64>() / pairs;
    Ok((mean, second))
}

/// Variances at or below this are treated as zero.
pub const VARIANCE_FLOOR: f64 = 1e-24;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EtaStats {
    pub sigma_ab2: f64,
    pub sigma_a2: f64,
    /// `None` when σ_A² vanishes.
    pub eta: Option<f64>,
}

/// `η = σ_AB² / σ_A²` for the given weight (normally w⁺).
pub fn eta(a: &CodeSetProfiles, b: &CodeSetProfiles, w: &[f64]) -> Result<EtaStats> {
    if a.len() + b.len() < 2 {
        return Err(Error::domain("η needs at least two codes"));
    }
    let stats = separation_stats(a, b, w)?;
    let (ey, sigma_ab2) = union_spread(a, b, w)?;
    if ey.abs() > 1e-12 * (1.0 + sigma_ab2.sqrt()) {
        return Err(Error::domain(format!("E(Y) = {ey} should vanish")));
    }
    let sigma_a2 = stats.variance;
    let eta = (sigma_a2 > VARIANCE_FLOOR).then(|| sigma_ab2 / sigma_a2);
    Ok(EtaStats {
        sigma_ab2,
        sigma_a2,
        eta,
    })
}

/// Everything known about the style of A relative to B.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StyleFingerprint {
    pub measure_names: Vec<String>,
    pub u: Vec<f64>,
    /// Zero vector when `degenerate` is `IdenticalProfiles`.
    pub w_plus: Vec<f64>,
    pub u_norm: f64,
    /// `‖u‖ / M`; equals the maximal E(X) for p = 2.
    pub m: f64,
    /// `m / √n`.
    pub theta: f64,
    pub eta: Option<f64>,
    pub sigma_a2: f64,
    pub sigma_ab2: f64,
    pub size_a: usize,
    pub size_b: usize,
    /// `M = #A·#B`.
    pub pairs: usize,
    pub p: f64,
    #[serde(skip)]
    pub degenerate: Option<Degeneracy>,
}

impl StyleFingerprint {
    pub fn compute(a: &CodeSetProfiles, b: &CodeSetProfiles, norm: NormSpec) -> Result<Self> {
        let u = u_vector(a, b)?;
        let n = u.len();
        let pairs = a.len() * b.len();
        let u_norm = norm.norm(&u);
        let mut fp = StyleFingerprint {
            measure_names: a.measure_names().to_vec(),
            w_plus: vec![0.0; n],
            u,
            u_norm,
            m: 0.0,
            theta: 0.0,
            eta: None,
            sigma_a2: 0.0,
            sigma_ab2: 0.0,
            size_a: a.len(),
            size_b: b.len(),
            pairs,
            p: norm.p(),
            degenerate: None,
        };
        match fingerprint(&fp.u, norm) {
            Ok(w) => fp.w_plus = w,
            Err(Error::Degenerate(d)) => {
                fp.degenerate = Some(d);
                return Ok(fp);
            }
            Err(e) => return Err(e),
        }
        fp.m = u_norm / pairs as f64;
        fp.theta = theta_of(fp.m, n);
        if a.len() + b.len() >= 2 {
            let stats = eta(a, b, &fp.w_plus)?;
            fp.sigma_a2 = stats.sigma_a2;
            fp.sigma_ab2 = stats.sigma_ab2;
            fp.eta = stats.eta;
            if fp.eta.is_none() {
                fp.degenerate = Some(Degeneracy::ZeroVariance);
            }
        }
        Ok(fp)
    }

    /// Reason η is missing, if it is.
    pub fn eta_reason(&self) -> Option<&'static str> {
        self.degenerate.map(Degeneracy::reason)
    }
}

/// `θ = m / √n`. Bounded by 1 for p = 2 and measures in [0,1].
pub fn theta_of(m: f64, n: usize) -> f64 {
    m / (n as f64).sqrt()
}

pub fn theta(fp: &StyleFingerprint) -> f64 {
    theta_of(fp.m, fp.u.len())
}
