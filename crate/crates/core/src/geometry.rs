//! Pseudohyperbolic geometry on the open unit disk.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{LabError, Result};

/// Points closer than this to the unit circle are rejected.
pub const BOUNDARY_GUARD: f64 = 1e-14;

/// A point of the open unit disk.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "(f64, f64)", into = "(f64, f64)")]
pub struct DiskPoint(Complex64);

impl DiskPoint {
    pub fn new(re: f64, im: f64) -> Result<Self> {
        Self::from_complex(Complex64::new(re, im))
    }

    pub fn from_complex(z: Complex64) -> Result<Self> {
        if !(z.re.is_finite() && z.im.is_finite()) || z.norm() >= 1.0 - BOUNDARY_GUARD {
            return Err(LabError::domain(format!(
                "point {} + {}i is not inside the unit disk",
                z.re, z.im
            )));
        }
        Ok(DiskPoint(z))
    }

    pub fn polar(modulus: f64, phase: f64) -> Result<Self> {
        Self::from_complex(Complex64::from_polar(modulus, phase))
    }

    pub const ORIGIN: DiskPoint = DiskPoint(Complex64::new(0.0, 0.0));

    pub fn z(self) -> Complex64 {
        self.0
    }

    pub fn re(self) -> f64 {
        self.0.re
    }

    pub fn im(self) -> f64 {
        self.0.im
    }

    pub fn modulus(self) -> f64 {
        self.0.norm()
    }

    /// Rotation `z -> e^{i theta} z`; stays inside the disk.
    pub fn rotate(self, theta: f64) -> Self {
        DiskPoint(self.0 * Complex64::from_polar(1.0, theta))
    }
}

impl TryFrom<(f64, f64)> for DiskPoint {
    type Error = LabError;

    fn try_from((re, im): (f64, f64)) -> Result<Self> {
        DiskPoint::new(re, im)
    }
}

impl From<DiskPoint> for (f64, f64) {
    fn from(p: DiskPoint) -> Self {
        (p.re(), p.im())
    }
}

impl TryFrom<Complex64> for DiskPoint {
    type Error = LabError;

    fn try_from(z: Complex64) -> Result<Self> {
        DiskPoint::from_complex(z)
    }
}

/// Pseudohyperbolic distance `|(z - w) / (1 - conj(w) z)|`.
pub fn rho(z: DiskPoint, w: DiskPoint) -> f64 {
    rho_raw(z.0, w.0)
}

pub(crate) fn rho_raw(z: Complex64, w: Complex64) -> f64 {
    (z - w).norm() / (1.0 - w.conj() * z).norm()
}

/// A Euclidean disk `{ z : |z - center| < radius }`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EuclideanDisk {
    pub center: Complex64,
    pub radius: f64,
}

impl EuclideanDisk {
    pub fn contains(&self, z: Complex64) -> bool {
        (z - self.center).norm() < self.radius
    }

    /// Point of the bounding circle at angle `theta`.
    pub fn boundary_point(&self, theta: f64) -> Complex64 {
        self.center + Complex64::from_polar(self.radius, theta)
    }
}

/// The pseudohyperbolic disk `{ z : rho(z, a) < radius }` as a Euclidean disk.
///
/// Radius `R(1-|a|^2)/(1-R^2|a|^2)`, center `a(1-R^2)/(1-R^2|a|^2)`.
pub fn pseudo_disk(a: DiskPoint, radius: f64) -> Result<EuclideanDisk> {
    if !(radius > 0.0 && radius < 1.0) {
        return Err(LabError::domain(format!(
            "pseudohyperbolic radius {radius} must lie in (0, 1)"
        )));
    }
    let r2 = radius * radius;
    let a2 = a.0.norm_sqr();
    let denom = 1.0 - r2 * a2;
    Ok(EuclideanDisk {
        center: a.0 * ((1.0 - r2) / denom),
        radius: radius * (1.0 - a2) / denom,
    })
}

/// Stolz angle `{ z : |1 - conj(vertex) z| <= aperture (1 - |z|) }`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StolzDomain {
    vertex: Complex64,
    aperture: f64,
}

impl StolzDomain {
    pub fn new(vertex: Complex64, aperture: f64) -> Result<Self> {
        if (vertex.norm() - 1.0).abs() > 1e-12 {
            return Err(LabError::domain("Stolz vertex must be unimodular"));
        }
        if !(aperture.is_finite() && aperture > 1.0) {
            return Err(LabError::domain("Stolz aperture must exceed 1"));
        }
        Ok(StolzDomain { vertex, aperture })
    }

    /// Vertex `e^{i phase}`.
    pub fn at_angle(phase: f64, aperture: f64) -> Result<Self> {
        Self::new(Complex64::from_polar(1.0, phase), aperture)
    }

    pub fn vertex(&self) -> Complex64 {
        self.vertex
    }

    pub fn aperture(&self) -> f64 {
        self.aperture
    }

    pub fn contains(&self, z: DiskPoint) -> bool {
        (1.0 - self.vertex.conj() * z.0).norm() <= self.aperture * (1.0 - z.modulus())
    }

    /// Largest angular offset from the vertex ray at which a point of modulus `r`
    /// still belongs to the domain.
    pub fn max_angle(&self, r: f64) -> f64 {
        // |1 - r e^{i phi}|^2 = 1 - 2r cos(phi) + r^2 <= eta^2 (1-r)^2
        let eta = self.aperture;
        let cos_phi = (1.0 + r * r - eta * eta * (1.0 - r) * (1.0 - r)) / (2.0 * r);
        cos_phi.clamp(-1.0, 1.0).acos()
    }
}

pub fn stolz_contains(domain: &StolzDomain, z: DiskPoint) -> bool {
    domain.contains(z)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    fn pt(re: f64, im: f64) -> DiskPoint {
        DiskPoint::new(re, im).unwrap()
    }

    #[test]
    fn rho_examples() {
        assert_abs_diff_eq!(rho(pt(0.0, 0.0), pt(0.5, 0.0)), 0.5, epsilon = 1e-15);
        assert_eq!(rho(pt(0.5, 0.0), pt(0.5, 0.0)), 0.0);
        // |1 / 1.25|
        assert_abs_diff_eq!(rho(pt(0.5, 0.0), pt(-0.5, 0.0)), 0.8, epsilon = 1e-15);
    }

    #[test]
    fn boundary_points_rejected() {
        assert!(DiskPoint::new(1.0, 0.0).is_err());
        assert!(DiskPoint::new(0.0, -1.2).is_err());
        assert!(DiskPoint::new(1.0 - 1e-15, 0.0).is_err());
        assert!(DiskPoint::new(f64::NAN, 0.0).is_err());
        assert!(DiskPoint::new(1.0 - 1e-12, 0.0).is_ok());
    }

    #[test]
    fn pseudo_disk_examples() {
        let d = pseudo_disk(DiskPoint::ORIGIN, 0.3).unwrap();
        assert_abs_diff_eq!(d.center.norm(), 0.0);
        assert_abs_diff_eq!(d.radius, 0.3, epsilon = 1e-15);

        let d = pseudo_disk(pt(0.5, 0.0), 0.5).unwrap();
        assert_abs_diff_eq!(d.center.re, 0.4, epsilon = 1e-15);
        assert_abs_diff_eq!(d.radius, 0.4, epsilon = 1e-15);
        // boundary circle is the level set rho = 0.5
        for k in 0..64 {
            let z = d.boundary_point(k as f64 * std::f64::consts::TAU / 64.0);
            assert_abs_diff_eq!(rho_raw(z, Complex64::new(0.5, 0.0)), 0.5, epsilon = 1e-12);
        }

        let d = pseudo_disk(pt(0.9, 0.0), 0.1).unwrap();
        assert_abs_diff_eq!(d.radius, 0.1 * 0.19 / 0.9919, epsilon = 1e-15);
        assert_abs_diff_eq!(d.radius, 0.019155, epsilon = 1e-6);
    }

    #[test]
    fn pseudo_disk_rejects_bad_radius() {
        assert!(pseudo_disk(DiskPoint::ORIGIN, 0.0).is_err());
        assert!(pseudo_disk(DiskPoint::ORIGIN, 1.0).is_err());
        assert!(pseudo_disk(DiskPoint::ORIGIN, -0.2).is_err());
    }

    #[test]
    fn stolz_examples() {
        let dom = StolzDomain::new(Complex64::new(1.0, 0.0), 2.0).unwrap();
        assert!(dom.contains(DiskPoint::ORIGIN));
        assert!(dom.contains(pt(0.9, 0.0)));
        assert!(!dom.contains(pt(0.0, 0.9)));
        assert!(StolzDomain::new(Complex64::new(0.5, 0.0), 2.0).is_err());
        assert!(StolzDomain::new(Complex64::new(1.0, 0.0), 1.0).is_err());
    }

    #[test]
    fn stolz_max_angle_collapses_for_thin_apertures() {
        let dom = StolzDomain::new(Complex64::new(1.0, 0.0), 1.0 + 1e-12).unwrap();
        assert!(dom.max_angle(0.5) < 1e-5);
        let wide = StolzDomain::new(Complex64::new(1.0, 0.0), 3.0).unwrap();
        assert!(wide.max_angle(0.5) > 0.5);
    }

    fn disk_point() -> impl Strategy<Value = DiskPoint> {
        (0.0..0.999f64, 0.0..std::f64::consts::TAU)
            .prop_map(|(r, t)| DiskPoint::polar(r, t).unwrap())
    }

    proptest! {
        #[test]
        fn rho_is_a_symmetric_rotation_invariant_metric(
            z in disk_point(), w in disk_point(), theta in 0.0..std::f64::consts::TAU
        ) {
            let d = rho(z, w);
            prop_assert!((0.0..1.0).contains(&d));
            prop_assert_eq!(d, rho(w, z));
            prop_assert!((rho(z.rotate(theta), w.rotate(theta)) - d).abs() < 1e-12);
            prop_assert_eq!(rho(z, z), 0.0);
        }

        #[test]
        fn pseudo_disk_matches_metric_ball(
            a in disk_point(), radius in 0.01..0.99f64, z in disk_point()
        ) {
            let disk = pseudo_disk(a, radius).unwrap();
            let d = rho(z, a);
            if (d - radius).abs() > 1e-10 {
                prop_assert_eq!(disk.contains(z.z()), d < radius);
            }
        }

        #[test]
        fn stolz_domains_are_radially_star_shaped(
            phase in 0.0..std::f64::consts::TAU, eta in 1.01..5.0f64,
            z in disk_point(), t in 0.0..=1.0f64
        ) {
            let dom = StolzDomain::at_angle(phase, eta).unwrap();
            if dom.contains(z) {
                let inner = DiskPoint::from_complex(z.z() * t).unwrap();
                prop_assert!(dom.contains(inner));
            }
        }
    }
}
