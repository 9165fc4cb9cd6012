use serde::{Deserialize, Serialize};

use super::{GeometryError, Vec3};
use crate::tolerance::Tolerances;

/// An orthonormal triad of axes, expressed in the laboratory basis.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Frame {
    pub z_axis: Vec3,
    pub y_axis: Vec3,
    pub x_axis: Vec3,
}

impl Frame {
    pub const LAB: Frame = Frame { z_axis: Vec3::Z, y_axis: Vec3::Y, x_axis: Vec3::X };

    /// Builds the frame with `z` along the unit vector `z_axis` and `y` along
    /// `y_dir`; `x = y × z`.
    pub(crate) fn from_z_y(z_axis: Vec3, y_dir: Vec3, tol: &Tolerances) -> Result<Frame, GeometryError> {
        let y_axis =
            y_dir.normalized(tol.geometric).ok_or(GeometryError::CollinearDegenerate { cross_norm: y_dir.norm() })?;
        let x_axis = y_axis.cross(&z_axis);
        Ok(Frame { z_axis, y_axis, x_axis })
    }

    /// A canonical frame with `z` along `axis` and `x` along the projection of
    /// `reference` onto the plane perpendicular to it. Without a reference the
    /// laboratory x-axis is used, falling back to the y-axis when it is
    /// (nearly) parallel to `axis`.
    pub fn canonical(axis: &Vec3, reference: Option<Vec3>, tol: &Tolerances) -> Result<Frame, GeometryError> {
        let z_axis = axis.normalized(tol.geometric).ok_or(GeometryError::DegenerateAxis { norm: axis.norm() })?;
        let pick = |r: Vec3| r.reject_from(&z_axis).normalized(tol.geometric);
        let x_axis = match reference {
            Some(r) => pick(r).ok_or(GeometryError::CollinearDegenerate { cross_norm: r.cross(&z_axis).norm() })?,
            None => pick(Vec3::X).or_else(|| pick(Vec3::Y)).expect("x or y is transverse to any axis"),
        };
        let y_axis = z_axis.cross(&x_axis);
        Ok(Frame { z_axis, y_axis, x_axis })
    }

    /// Components of `v` along the frame axes.
    pub fn components(&self, v: &Vec3) -> Vec3 {
        Vec3::new(v.dot(&self.x_axis), v.dot(&self.y_axis), v.dot(&self.z_axis))
    }

    /// Frame rotated about its own z-axis by `angle` radians.
    pub fn rotated_about_z(&self, angle: f64) -> Frame {
        Frame {
            z_axis: self.z_axis,
            y_axis: self.y_axis.rotated_about(&self.z_axis, angle),
            x_axis: self.x_axis.rotated_about(&self.z_axis, angle),
        }
    }

    /// Every axis rotated about the unit vector `axis`.
    pub fn rotated_about(&self, axis: &Vec3, angle: f64) -> Frame {
        Frame {
            z_axis: self.z_axis.rotated_about(axis, angle),
            y_axis: self.y_axis.rotated_about(axis, angle),
            x_axis: self.x_axis.rotated_about(axis, angle),
        }
    }

    /// Largest deviation from unit length and mutual orthogonality.
    pub fn orthonormality_residual(&self) -> f64 {
        let axes = [self.x_axis, self.y_axis, self.z_axis];
        let mut worst = 0.0f64;
        for (i, a) in axes.iter().enumerate() {
            worst = worst.max((a.norm() - 1.0).abs());
            for b in &axes[i + 1..] {
                worst = worst.max(a.dot(b).abs());
            }
        }
        worst
    }

    /// `|x − y × z|`.
    pub fn handedness_residual(&self) -> f64 {
        (self.x_axis - self.y_axis.cross(&self.z_axis)).norm()
    }

    pub fn is_right_handed_orthonormal(&self, tol: f64) -> bool {
        self.orthonormality_residual() < tol && self.handedness_residual() < tol
    }

    /// Largest axis-by-axis distance to `other`.
    pub fn distance(&self, other: &Frame) -> f64 {
        (self.x_axis - other.x_axis)
            .norm()
            .max((self.y_axis - other.y_axis).norm())
            .max((self.z_axis - other.z_axis).norm())
    }
}
