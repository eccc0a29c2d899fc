//! Canned configs: the three spin-bath decompositions and the
//! Poincaré → Galilei contraction.

pub const NAMES: [&str; 4] = ["dec1", "dec2", "dec3", "contraction"];

/// Central spin against a 20-spin bath; decoheres.
pub const DEC1: &str = r#"{
  "kind": "spinbath_gtfd",
  "seed": 7,
  "model": {
    "n_bath": 20,
    "couplings": {"random": {"low": 0.1, "high": 1.0}},
    "initial": {"p": "plus", "bath": "plus"}
  },
  "partition": "dec1",
  "times": {"start": 0.0, "end": 100.0, "count": 401}
}
"#;

/// One bath spin as the system; its coherence keeps returning.
pub const DEC2: &str = r#"{
  "kind": "spinbath_gtfd",
  "seed": 11,
  "model": {
    "n_bath": 4,
    "couplings": {"random": {"low": 0.1, "high": 1.0}},
    "initial": {"p": "plus", "bath": "plus"}
  },
  "partition": {"dec2": 1},
  "times": {"start": 0.0, "end": 100.0, "count": 401}
}
"#;

/// Ten bath spins as the system, watched through collective observables.
pub const DEC3: &str = r#"{
  "kind": "spinbath_gtfd",
  "seed": 2024,
  "model": {
    "n_bath": 12,
    "couplings": {"random": {"low": 0.1, "high": 1.0}},
    "initial": {"p": "plus", "bath": "random"}
  },
  "partition": {"dec3": 10},
  "observables": "collective",
  "backend": "state_vector",
  "times": {"start": 0.0, "end": 100.0, "count": 401}
}
"#;

pub const CONTRACTION: &str = r#"{
  "kind": "liealg_contract",
  "seed": 0,
  "source": "poincare",
  "central": "M",
  "basis_change": [
    {"replace": "H", "with": "Hbar", "terms": {"H": 1, "M": -1}}
  ],
  "schedule": {
    "Hbar": 0, "M": 2,
    "P1": 1, "P2": 1, "P3": 1,
    "J1": 0, "J2": 0, "J3": 0,
    "K1": 1, "K2": 1, "K3": 1
  },
  "target": "extended_galilei",
  "casimirs": ["mass_shell", "M", "pauli_lubanski"]
}
"#;

pub fn config(name: &str) -> Option<&'static str> {
    match name {
        "dec1" => Some(DEC1),
        "dec2" => Some(DEC2),
        "dec3" => Some(DEC3),
        "contraction" => Some(CONTRACTION),
        _ => None,
    }
}
