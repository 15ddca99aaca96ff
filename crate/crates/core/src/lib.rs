pub mod cancel;
pub mod poly;
pub mod session;
pub mod solve;
pub mod space;
pub mod syntax;
pub mod tropical;

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/language.md")]
    mod language {}
    #[doc = include_str!("../../../book/src/spaces.md")]
    mod spaces {}
    #[doc = include_str!("../../../book/src/polynomials.md")]
    mod polynomials {}
    #[doc = include_str!("../../../book/src/solvers.md")]
    mod solvers {}
    #[doc = include_str!("../../../book/src/tropical.md")]
    mod tropical {}
    #[doc = include_str!("../../../book/src/service.md")]
    mod service {}
}
