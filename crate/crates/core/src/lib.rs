pub mod arcs;
pub mod cli;
pub mod error;
pub mod geom;
pub mod io;
pub mod lp;
pub mod normals;
pub mod oracle;
pub mod props;
pub mod qp;
pub mod region;
pub mod svg;
