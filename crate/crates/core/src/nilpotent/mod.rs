//! Characteristics, sl₂ triples and nilpotent orbit invariants.

mod characteristic;
mod classify;
mod sl2;

pub use characteristic::{characteristic_to_h, eigenspace, h_to_characteristic, Characteristic};
pub use classify::{
    classify_nilpotent, verify_classification, verify_nilpotent_tables, verify_orbit_dims,
};
pub use sl2::{
    complete_sl2, orbit_dim, random_sl2_for_h, search_normal_form, search_normal_form_capped,
    sl2_through, solve_f, solve_f_on, stabilizer_dim, Sl2Triple, SEARCH_CAP,
};
