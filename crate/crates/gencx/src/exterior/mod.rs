//! Exterior algebra of forms with wedge, contraction, Clifford action, Mukai
//! pairing and exponentials.

mod clifford;
mod form;
mod parse;

pub use clifford::{bivector_act, exp_act, exp_form, exp_nilpotent, mukai, ExpKind, GenBivector, GenVector};
pub use form::{all_masks, contract_sign, degree_masks, wedge_sign, Basis, Form, Multivector, MAX_GENERATORS};
pub use parse::{format_form, format_form_ext, format_form_named, parse_form, parse_form_vars};
