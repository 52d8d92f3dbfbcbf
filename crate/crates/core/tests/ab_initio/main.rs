//! Checks against independently computed values and randomized invariants.

mod oracles;
mod properties;

use verlinde_core::centerlat::Center;
use verlinde_core::weyl::{enumerate_weyl, WeylGroup, DEFAULT_WEYL_BUDGET};
use verlinde_core::RootDatum;

pub struct Fixture {
    pub rd: RootDatum,
    pub group: WeylGroup,
    pub center: Center,
}

pub fn fixture(t: &str) -> Fixture {
    let rd = RootDatum::new(t.parse().unwrap());
    let group = enumerate_weyl(&rd, DEFAULT_WEYL_BUDGET).unwrap();
    let center = Center::new(&rd);
    Fixture { rd, group, center }
}
