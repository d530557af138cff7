//! The quadrature rules on their own.

use relhydrogen::numerics::quadrature::{gauss_legendre, integrate_semi_infinite};
use relhydrogen::numerics::{integrate, tanh_sinh, QuadratureSpec};

fn main() -> relhydrogen::Result<()> {
    let spec = QuadratureSpec::default();
    let i = integrate(|x| x.sin(), 0.0, std::f64::consts::PI, &spec)?;
    println!("int_0^pi sin = {:.15} (err {:.1e})", i.value, i.error);
    let g = integrate_semi_infinite(|r| r.powi(6) * (-2.0 * r).exp(), 0.0, 1.0, &spec)?;
    println!("int_0^inf R^6 exp(-2R) = {:.15} (720/128 = 5.625)", g.value);
    let b = tanh_sinh(|x| Ok(x.powf(-0.3) * (1.0 - x).powf(0.7)), 0.0, 1.0, 1e-8)?;
    let want = libm::tgamma(0.7) * libm::tgamma(1.7) / libm::tgamma(2.4);
    println!("B(0.7, 1.7) = {:.15} vs {want:.15}", b.value);
    let (x, w) = gauss_legendre(5);
    println!("5-point Gauss-Legendre: {x:?} {w:?}");
    Ok(())
}
