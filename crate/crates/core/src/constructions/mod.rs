//! CRG constructions that witness upper bounds.

pub mod furedi;
pub mod registry;
pub mod srg;

pub use furedi::{furedi_graph, gen_furedi};
pub use registry::ConstructionSpec;
pub use srg::{gen_srg, SrgParams, SrgSource};

use crate::crg::{Crg, EdgeColor, VertexColor};
use crate::error::{param, Result};

/// `K(w, b)`: `w` white and `b` black vertices, every edge gray.
pub fn gen_gray_clique(w: usize, b: usize) -> Result<Crg> {
    if w + b == 0 {
        return Err(param("K(w,b) needs at least one vertex"));
    }
    let mut colors = vec![VertexColor::White; w];
    colors.extend(std::iter::repeat_n(VertexColor::Black, b));
    Crg::new(colors)
}

/// `t + 1` black vertices, a white perfect matching, every other edge gray.
pub fn gen_matching(t: usize) -> Result<Crg> {
    if t < 3 || t.is_multiple_of(2) {
        return Err(param(format!("the matching construction needs odd t >= 3, got {t}")));
    }
    let mut crg = Crg::all_black(t + 1)?;
    for i in 0..t.div_ceil(2) {
        crg.set_edge(2 * i, 2 * i + 1, EdgeColor::White);
    }
    Ok(crg)
}

/// All-black CRG on `k` vertices whose white edges form the `r`-th power of
/// the cycle `C_k`; the remaining edges are gray.
pub fn gen_cycle_power(k: usize, r: usize) -> Result<Crg> {
    if r < 1 || k < 2 * r + 2 {
        return Err(param(format!("cycle power C({k},{r}) needs r >= 1 and k >= 2r + 2")));
    }
    let mut crg = Crg::all_black(k)?;
    for i in 0..k {
        for step in 1..=r {
            crg.set_edge(i, (i + step) % k, EdgeColor::White);
        }
    }
    Ok(crg)
}
