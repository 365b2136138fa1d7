//! Built-in potential families shared by golden tests and the `verify`
//! command: rational s(s+1)/x², Rosen-Morse −s(s+1)/cosh²x encoded over
//! η = eˣ, and elliptic s(s+1)·wp.

use crate::error::Result;
use crate::fields::FieldTower;
use crate::rat::{rat_i, Rat};
use crate::spectral::Potential;
use crate::symbol::Symbol;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Family {
    Rational,
    RosenMorse,
    Elliptic,
}

impl Family {
    pub fn parse(name: &str) -> Option<Family> {
        match name {
            "rational" => Some(Family::Rational),
            "rosen-morse" => Some(Family::RosenMorse),
            "elliptic" => Some(Family::Elliptic),
            _ => None,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Family::Rational => "rational",
            Family::RosenMorse => "rosen-morse",
            Family::Elliptic => "elliptic",
        }
    }
}

/// The family member of index s.
pub fn potential(family: Family, s: usize) -> Result<Potential> {
    let ss1 = rat_i((s * (s + 1)) as i64);
    match family {
        Family::Rational => {
            let tower = FieldTower::rational(&[]);
            let x = tower.var(Symbol::new("x"))?;
            let u = tower.constant(ss1).div(&x.mul(&x))?;
            Potential::new(tower, u, &format!("rational s={s}"))
        }
        Family::RosenMorse => {
            // −s(s+1)/cosh²x with cosh x = (η + 1/η)/2: u = −4·s(s+1)·η²/(η²+1)²
            let tower = FieldTower::exponential(&[]);
            let eta = tower.var(Symbol::new("eta"))?;
            let eta2 = eta.mul(&eta);
            let den = eta2.add(&tower.one()).pow(2)?;
            let u = eta2.scale(&(-Rat::from_integer(4.into()) * ss1)).div(&den)?;
            Potential::new(tower, u, &format!("rosen-morse s={s}"))
        }
        Family::Elliptic => {
            let tower = FieldTower::weierstrass(&[], false);
            let wp = tower.var(Symbol::new("wp"))?;
            let u = wp.scale(&ss1);
            Potential::new(tower, u, &format!("elliptic s={s}"))
        }
    }
}

/// Elliptic family member at numeric invariants (g2, g3).
pub fn elliptic_numeric(s: usize, g2: Rat, g3: Rat) -> Result<Potential> {
    let ss1 = rat_i((s * (s + 1)) as i64);
    let tower = FieldTower::weierstrass_numeric(g2, g3, &[], false);
    let wp = tower.var(Symbol::new("wp"))?;
    let u = wp.scale(&ss1);
    Potential::new(tower, u, &format!("elliptic s={s} (numeric invariants)"))
}
