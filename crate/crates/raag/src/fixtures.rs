//! The graphs shipped with the crate.

use raag_core::{parse_graph, Raag};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Fixture {
    Free2,
    Z2,
    F2xZ,
}

impl Fixture {
    pub const ALL: [Fixture; 3] = [Fixture::Free2, Fixture::Z2, Fixture::F2xZ];

    pub fn name(self) -> &'static str {
        match self {
            Fixture::Free2 => "free2",
            Fixture::Z2 => "z2",
            Fixture::F2xZ => "f2xz",
        }
    }

    pub fn text(self) -> &'static str {
        match self {
            Fixture::Free2 => include_str!("../../../fixtures/free2.txt"),
            Fixture::Z2 => include_str!("../../../fixtures/z2.txt"),
            Fixture::F2xZ => include_str!("../../../fixtures/f2xz.txt"),
        }
    }

    pub fn raag(self) -> Raag {
        Raag::new(parse_graph(self.text()).expect("fixture graphs parse"))
    }

    pub fn from_name(name: &str) -> Option<Fixture> {
        Fixture::ALL.into_iter().find(|f| f.name() == name)
    }
}
