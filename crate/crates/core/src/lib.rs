//! DRESS codes: an outer MDS erasure code over GF(256) composed with an inner
//! fractional repetition (FR) code, plus the tools to build, check and
//! exercise them.
//!
//! - [`code`]: the [`FrCode`] placement type, the strong/weak/irregular
//!   verifier and supported file sizes.
//! - [`bounds`]: parameter checks, the cut-set bound and MBR capacity.
//! - [`constructions`]: regular-graph, partial-regular-graph, modular, ring
//!   and projective-plane codes.
//! - [`gf256`] and [`mds`]: the outer systematic MDS code.
//! - [`sim`]: a storage cluster with node failure and uncoded exact repair.
//!
//! ```
//! use dress_core::{assemble_dress, regular_graph_code, store_file, RepairMode};
//!
//! let inner = regular_graph_code(6, 5)?;
//! let code = assemble_dress(&inner, 4)?;
//! assert_eq!(code.b(), 14);
//!
//! let file: Vec<u8> = (0..14).collect();
//! let mut cluster = store_file(&code, &file)?;
//! cluster.fail_node(0)?;
//! let report = cluster.repair(0, RepairMode::Strict)?;
//! assert_eq!(report.total_bandwidth, 5);
//! assert_eq!(cluster.retrieve_file(&[1, 2, 3, 4])?, file);
//! # Ok::<(), dress_core::Error>(())
//! ```

pub mod bounds;
pub mod code;
pub mod constructions;
mod error;
pub mod gf256;
pub mod mds;
pub mod sim;

pub use bounds::{cut_set_bound, mbr_capacity, mbr_file_size, validate_dss_params, DssParams};
pub use code::{
    normalize_symbols, supported_file_size, symbol_relabeling, verify_code, Classification, FrCode,
    Symbol, VerificationReport,
};
pub use constructions::{
    circulant_from_polynomial, circulant_regular_graph, code_from_graph, half_shift_matrix,
    modular_code, partial_regular_graph, projective_plane_code, regular_graph_code, ring_code,
    wfr_from_prg, CirculantSpec, Graph, PermutationMatrix,
};
pub use error::{Error, Result};
pub use gf256::{field_mul, Gf256};
pub use mds::MdsParams;
pub use sim::{
    assemble_dress, failure_tolerance_check, plan_uncoded_repair, store_file, ClusterState,
    DressCode, Event, EventKind, RepairMode, RepairReport, Transfer,
};
