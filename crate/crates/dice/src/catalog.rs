//! Named built-in examples. Each entry pairs a partition, shipped as data in
//! the canonical text format, with the tournament it models; the pairing is
//! re-verified by the test suite. Entry names are stable CLI identifiers.

use crate::error::{Error, Result};
use crate::partition::{parse_partition, RegularPartition};
use crate::tournament::{group_game, GameSubset, Tournament};

/// A named example: partition plus the tournament it is documented to model.
pub struct CatalogEntry {
    /// Stable identifier accepted by the CLI.
    pub name: &'static str,
    /// One-line human description.
    pub description: &'static str,
    partition_text: &'static str,
    tournament: fn() -> Tournament,
}

impl CatalogEntry {
    pub fn partition(&self) -> RegularPartition {
        parse_partition(self.partition_text).expect("shipped catalog data parses")
    }

    pub fn tournament(&self) -> Tournament {
        (self.tournament)()
    }
}

fn rpsls_tournament() -> Tournament {
    // rock-paper-scissors-lizard-spock: the unique 5-vertex game up to
    // isomorphism, in its traditional labeling
    Tournament::new(
        5,
        &[
            (0, 2),
            (0, 4),
            (1, 0),
            (1, 3),
            (2, 1),
            (2, 3),
            (3, 0),
            (3, 4),
            (4, 1),
            (4, 2),
        ],
    )
    .expect("edge list is a tournament")
}

fn rotation_game(n: usize) -> Tournament {
    group_game(&GameSubset::initial(n))
}

fn seven_game_124() -> Tournament {
    group_game(&GameSubset::new(7, [1, 2, 4]).expect("valid residue subset"))
}

fn seven_game_type3() -> Tournament {
    // the third 7-vertex game class: the subset-{1,2,4} game with the
    // 3-cycle through vertices 4, 6, 7 reversed; not a rotation game
    let base = seven_game_124();
    Tournament::from_orientation(7, |a, b| {
        let flipped = matches!((a, b), (3, 5) | (5, 6) | (3, 6));
        base.has_edge(a, b) != flipped
    })
}

const ENTRIES: &[CatalogEntry] = &[
    CatalogEntry {
        name: "eq1.2",
        description: "smallest intransitive dice: 3 blocks of [9] modeling the 3-cycle",
        partition_text: include_str!("../data/eq1_2.txt"),
        tournament: Tournament::three_cycle,
    },
    CatalogEntry {
        name: "eq1.3",
        description: "rock-paper-scissors-lizard-spock as 5 six-element blocks of [30]",
        partition_text: include_str!("../data/eq1_3.txt"),
        tournament: rpsls_tournament,
    },
    CatalogEntry {
        name: "eq4.15",
        description: "proper stratified model of the 5-vertex rotation game",
        partition_text: include_str!("../data/eq4_15.txt"),
        tournament: || rotation_game(2),
    },
    CatalogEntry {
        name: "eq4.16",
        description: "a second proper stratified model of the 5-vertex rotation game",
        partition_text: include_str!("../data/eq4_16.txt"),
        tournament: || rotation_game(2),
    },
    CatalogEntry {
        name: "eq4.17",
        description: "proper stratified model of the 7-vertex rotation game (first 7-game class)",
        partition_text: include_str!("../data/eq4_17.txt"),
        tournament: || rotation_game(3),
    },
    CatalogEntry {
        name: "eq4.18",
        description: "proper stratified model of the mod-7 game with residue set {1,2,4} (second 7-game class)",
        partition_text: include_str!("../data/eq4_18.txt"),
        tournament: seven_game_124,
    },
    CatalogEntry {
        name: "type3",
        description: "eq4.18 after three simple switches: the non-rotational third 7-game class",
        partition_text: include_str!("../data/type3.txt"),
        tournament: seven_game_type3,
    },
];

/// Every shipped example.
pub fn entries() -> &'static [CatalogEntry] {
    ENTRIES
}

/// Looks an entry up by its stable name.
pub fn entry(name: &str) -> Result<&'static CatalogEntry> {
    ENTRIES.iter().find(|e| e.name == name).ok_or_else(|| {
        let names: Vec<&str> = ENTRIES.iter().map(|e| e.name).collect();
        Error::InvalidInput(format!(
            "unknown example {name:?}; available: {}",
            names.join(", ")
        ))
    })
}
