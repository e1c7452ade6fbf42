pub mod classify2d;
pub mod cli;
pub mod coalgebra;
pub mod exactfield;
pub mod fixtures;
pub mod hochschild;
pub mod liecoh;
pub mod quandlecoh;
pub mod shelfcohomology;
pub mod shelfmap;
pub mod tensorspace;
pub mod wiring;
pub mod yangbaxter;
