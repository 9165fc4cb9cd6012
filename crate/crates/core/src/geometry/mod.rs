//! Momentum geometry: the aggregate axis, per-particle helicity and aggregate
//! frames, canonical polar/azimuthal angles and the mutual azimuthal
//! dependency among particles.

mod frame;
mod vec3;

use std::f64::consts::TAU;

use serde::Serialize;
use thiserror::Error;

pub use frame::Frame;
pub use vec3::Vec3;

use crate::exactphase::TurnAngle;
use crate::tolerance::Tolerances;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeometryError {
    #[error("need at least 2 momenta, got {found}")]
    TooFewMomenta { found: usize },
    #[error("momentum {index} is zero")]
    ZeroMomentum { index: usize },
    #[error("aggregate axis is degenerate (|k| = {norm:e})")]
    DegenerateAxis { norm: f64 },
    #[error("momentum is collinear with the quantization axis (|k × p| = {cross_norm:e})")]
    CollinearDegenerate { cross_norm: f64 },
    #[error("azimuth of particle {index} is indeterminate: all other transverse components vanish")]
    IndeterminatePhi { index: usize },
    #[error("particle index {index} out of range for {len} particles")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("subset must contain at least 2 distinct particles")]
    SubsetTooSmall,
}

/// Polar angle and azimuth of a momentum in a canonical frame.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct CanonicalAngles {
    /// Radians, in `[0, π]`.
    pub theta: f64,
    /// Rank-0 azimuth, in `[0, 1)` turn.
    pub phi: TurnAngle,
}

impl CanonicalAngles {
    /// Unit direction in the canonical frame's own coordinates.
    pub fn direction(&self) -> Vec3 {
        Vec3::from_spherical(self.theta, self.phi.radians())
    }
}

fn unit(p: &Vec3, index: usize, tol: &Tolerances) -> Result<Vec3, GeometryError> {
    p.normalized(tol.normalization).ok_or(GeometryError::ZeroMomentum { index })
}

/// `k = Σ p̂_i` (not normalised).
///
/// The unit vectors are summed in a canonical order, so the result is
/// bit-for-bit independent of the order of `momenta`.
pub fn aggregate_axis(momenta: &[Vec3], tol: &Tolerances) -> Result<Vec3, GeometryError> {
    if momenta.len() < 2 {
        return Err(GeometryError::TooFewMomenta { found: momenta.len() });
    }
    let mut units = momenta.iter().enumerate().map(|(i, p)| unit(p, i, tol)).collect::<Result<Vec<_>, _>>()?;
    units.sort_by(|a, b| a.x.total_cmp(&b.x).then(a.y.total_cmp(&b.y)).then(a.z.total_cmp(&b.z)));
    let k = units.into_iter().fold(Vec3::ZERO, |acc, u| acc + u);
    if k.norm() < tol.geometric {
        return Err(GeometryError::DegenerateAxis { norm: k.norm() });
    }
    Ok(k)
}

fn unit_axis(k: &Vec3, tol: &Tolerances) -> Result<Vec3, GeometryError> {
    k.normalized(tol.geometric).ok_or(GeometryError::DegenerateAxis { norm: k.norm() })
}

/// Independent helicity frame: `z = p̂`, `y ∝ k × p̂`, `x = y × z`.
pub fn helicity_frame(p: &Vec3, k: &Vec3, tol: &Tolerances) -> Result<Frame, GeometryError> {
    let p_hat = unit(p, 0, tol)?;
    let k_hat = unit_axis(k, tol)?;
    Frame::from_z_y(p_hat, k_hat.cross(&p_hat), tol)
}

/// Aggregate frame: `z = k̂`, `y ∝ k × p̂`, `x = y × z`. The x-axis is then the
/// direction of `p` projected onto the plane perpendicular to `k`.
pub fn aggregate_frame(p: &Vec3, k: &Vec3, tol: &Tolerances) -> Result<Frame, GeometryError> {
    let p_hat = unit(p, 0, tol)?;
    let k_hat = unit_axis(k, tol)?;
    Frame::from_z_y(k_hat, k_hat.cross(&p_hat), tol)
}

/// Polar angle and rank-0 azimuth of `p` in `frame`.
pub fn canonical_angles(p: &Vec3, frame: &Frame, tol: &Tolerances) -> Result<CanonicalAngles, GeometryError> {
    let c = frame.components(&unit(p, 0, tol)?);
    let transverse = c.x.hypot(c.y);
    if transverse < tol.geometric {
        return Err(GeometryError::CollinearDegenerate { cross_norm: transverse });
    }
    let theta = transverse.atan2(c.z);
    let phi = TurnAngle::from_radians(c.y.atan2(c.x).rem_euclid(TAU), tol).normalized();
    Ok(CanonicalAngles { theta, phi })
}

/// `|Σ_i (p̂_i − (p̂_i·k̂) k̂)|`.
pub fn check_transverse_sum(momenta: &[Vec3], k: &Vec3) -> f64 {
    let k_hat = k.normalized(0.0).unwrap_or(Vec3::ZERO);
    momenta.iter().filter_map(|p| p.normalized(0.0)).fold(Vec3::ZERO, |acc, u| acc + u.reject_from(&k_hat)).norm()
}

/// Azimuth of particle `index` implied by all the other particles, using the
/// vanishing of the total transverse momentum direction. `angles[index]` is
/// ignored.
pub fn dependent_phi(index: usize, angles: &[CanonicalAngles], tol: &Tolerances) -> Result<TurnAngle, GeometryError> {
    if index >= angles.len() {
        return Err(GeometryError::IndexOutOfRange { index, len: angles.len() });
    }
    let (mut sx, mut sy) = (0.0, 0.0);
    for (_, a) in angles.iter().enumerate().filter(|(j, _)| *j != index) {
        let st = a.theta.sin();
        let (sp, cp) = a.phi.radians().sin_cos();
        sx += st * cp;
        sy += st * sp;
    }
    if sx.abs() < tol.normalization && sy.abs() < tol.normalization {
        return Err(GeometryError::IndeterminatePhi { index });
    }
    let phi = (-sy).atan2(-sx).rem_euclid(TAU);
    Ok(TurnAngle::from_radians(phi, tol).normalized())
}

/// Aggregate axis of a subset of the particles.
pub fn subset_axis(momenta: &[Vec3], subset: &[usize], tol: &Tolerances) -> Result<Vec3, GeometryError> {
    let mut idx = subset.to_vec();
    idx.sort_unstable();
    idx.dedup();
    if idx.len() < 2 {
        return Err(GeometryError::SubsetTooSmall);
    }
    let picked = idx
        .iter()
        .map(|&i| momenta.get(i).copied().ok_or(GeometryError::IndexOutOfRange { index: i, len: momenta.len() }))
        .collect::<Result<Vec<_>, _>>()?;
    aggregate_axis(&picked, tol)
}

/// Azimuth difference `φ_j − φ_i` (radians, in `[0, 2π)`) in the common frame
/// whose z-axis is the pair's own aggregate axis. Equals `π` for any pair.
pub fn pair_azimuth_gap(momenta: &[Vec3], i: usize, j: usize, tol: &Tolerances) -> Result<f64, GeometryError> {
    let k = subset_axis(momenta, &[i, j], tol)?;
    let frame = Frame::canonical(&k, None, tol)?;
    let phi_i = canonical_angles(&momenta[i], &frame, tol)?.phi.radians();
    let phi_j = canonical_angles(&momenta[j], &frame, tol)?.phi.radians();
    Ok((phi_j - phi_i).rem_euclid(TAU))
}

/// Aggregate axis, canonical frame and canonical angles of a whole configuration.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CanonicalGeometry {
    pub axis: Vec3,
    pub frame: Frame,
    pub angles: Vec<CanonicalAngles>,
}

/// Builds the canonical frame (z along the aggregate axis, x from `reference`,
/// then rotated about z by `rotation_radians`) and every particle's angles in it.
pub fn canonical_geometry(
    momenta: &[Vec3],
    reference: Option<Vec3>,
    rotation_radians: f64,
    tol: &Tolerances,
) -> Result<CanonicalGeometry, GeometryError> {
    let axis = aggregate_axis(momenta, tol)?;
    let frame = Frame::canonical(&axis, reference, tol)?.rotated_about_z(rotation_radians);
    let angles = momenta.iter().map(|p| canonical_angles(p, &frame, tol)).collect::<Result<Vec<_>, _>>()?;
    Ok(CanonicalGeometry { axis, frame, angles })
}
