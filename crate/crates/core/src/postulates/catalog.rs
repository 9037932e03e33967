//! The closed catalog of checkable postulates.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// What an instance of a postulate is made of.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Shape {
    /// One TPO and one proposition.
    SerialOne,
    /// One TPO and two propositions.
    SerialTwo,
    /// One TPO and one set of propositions.
    SetOne,
    /// One TPO and two sets of propositions.
    SetTwo,
    /// One TPO, two sets and a proposition.
    SetTwoProp,
    /// A two-entry profile and a set of worlds.
    ProfileSubset,
}

/// Which operator family a postulate exercises.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    SerialRevision,
    SerialContraction,
    ParallelRevision,
    ParallelContraction,
    Aggregation,
}

macro_rules! catalog {
    ($( $variant:ident => $name:literal, [$($alias:literal),*], $shape:ident, $family:ident, $doc:literal; )*) => {
        /// A postulate tag. Semantic (`⪯`/`min`) forms carry the plain tag;
        /// syntactic (belief-set) forms carry a `b` suffix.
        #[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
        pub enum PostulateId {
            $( #[doc = $doc] $variant, )*
        }

        impl PostulateId {
            pub const ALL: &'static [PostulateId] = &[$(PostulateId::$variant),*];

            pub fn name(self) -> &'static str {
                match self { $(PostulateId::$variant => $name,)* }
            }

            fn aliases(self) -> &'static [&'static str] {
                match self { $(PostulateId::$variant => &[$($alias),*],)* }
            }

            pub fn shape(self) -> Shape {
                match self { $(PostulateId::$variant => Shape::$shape,)* }
            }

            pub fn family(self) -> Family {
                match self { $(PostulateId::$variant => Family::$family,)* }
            }

            pub fn statement(self) -> &'static str {
                match self { $(PostulateId::$variant => $doc,)* }
            }
        }
    };
}

catalog! {
    K1 => "K*1", [], SerialOne, SerialRevision, "The posterior is a well-formed TPO, so its belief set is closed.";
    K2 => "K*2", [], SerialOne, SerialRevision, "A ∈ [Ψ*A].";
    K3 => "K*3", [], SerialOne, SerialRevision, "[Ψ*A] ⊆ Cn([Ψ] ∪ {A}).";
    K4 => "K*4", [], SerialOne, SerialRevision, "If ¬A ∉ [Ψ] then Cn([Ψ] ∪ {A}) ⊆ [Ψ*A].";
    K5 => "K*5", [], SerialOne, SerialRevision, "If A is consistent then so is [Ψ*A].";
    K6 => "K*6", [], SerialOne, SerialRevision, "Syntactic variants of A give the same belief set.";
    K7 => "K*7", [], SerialTwo, SerialRevision, "[Ψ*(A∧B)] ⊆ Cn([Ψ*A] ∪ {B}).";
    K8 => "K*8", [], SerialTwo, SerialRevision, "If ¬B ∉ [Ψ*A] then Cn([Ψ*A] ∪ {B}) ⊆ [Ψ*(A∧B)].";
    AgmMin => "AGM-min", [], SerialOne, SerialRevision, "min(⪯_{Ψ*A}, W) = min(⪯_Ψ, ⟦A⟧).";
    Cr1 => "CR1", [], SerialOne, SerialRevision, "x,y ∈ ⟦A⟧: x ⪯_{Ψ*A} y iff x ⪯_Ψ y.";
    Cr2 => "CR2", [], SerialOne, SerialRevision, "x,y ∈ ⟦¬A⟧: x ⪯_{Ψ*A} y iff x ⪯_Ψ y.";
    Cr3 => "CR3", [], SerialOne, SerialRevision, "x ∈ ⟦A⟧, y ∈ ⟦¬A⟧, x ≺_Ψ y ⇒ x ≺_{Ψ*A} y.";
    Cr4 => "CR4", [], SerialOne, SerialRevision, "x ∈ ⟦A⟧, y ∈ ⟦¬A⟧, x ⪯_Ψ y ⇒ x ⪯_{Ψ*A} y.";
    Ind => "Ind", [], SerialOne, SerialRevision, "x ∈ ⟦A⟧, y ∈ ⟦¬A⟧, x ⪯_Ψ y ⇒ x ≺_{Ψ*A} y.";
    Cc1 => "CC1", [], SerialOne, SerialContraction, "x,y ∈ ⟦¬A⟧: x ⪯_{Ψ∸A} y iff x ⪯_Ψ y.";
    Cc2 => "CC2", [], SerialOne, SerialContraction, "x,y ∈ ⟦A⟧: x ⪯_{Ψ∸A} y iff x ⪯_Ψ y.";
    Cc3 => "CC3", [], SerialOne, SerialContraction, "x ∈ ⟦¬A⟧, y ∈ ⟦A⟧, x ≺_Ψ y ⇒ x ≺_{Ψ∸A} y.";
    Cc4 => "CC4", [], SerialOne, SerialContraction, "x ∈ ⟦¬A⟧, y ∈ ⟦A⟧, x ⪯_Ψ y ⇒ x ⪯_{Ψ∸A} y.";
    LiSerial => "LI-serial", [], SerialOne, SerialContraction, "[Ψ*A] = Cn([Ψ∸¬A] ∪ {A}).";
    HiSerial => "HI-serial", [], SerialOne, SerialContraction, "[Ψ∸A] = [Ψ] ∩ [Ψ*¬A].";
    ConjStar => "Conj-star", ["Conj⊛"], SetOne, ParallelRevision, "[Ψ⊛S] = [Ψ*⋀S], i.e. min(⪯_{Ψ⊛S}, W) = min(⪯_Ψ, ⟦⋀S⟧).";
    KStar1 => "K-star-1", ["K⊛1"], SetOne, ParallelRevision, "The posterior is a well-formed TPO, so [Ψ⊛S] is closed.";
    KStar2 => "K-star-2", ["K⊛2"], SetOne, ParallelRevision, "S ⊆ [Ψ⊛S].";
    KStar3 => "K-star-3", ["K⊛3"], SetOne, ParallelRevision, "[Ψ⊛S] ⊆ Cn([Ψ] ∪ S).";
    KStar4 => "K-star-4", ["K⊛4"], SetOne, ParallelRevision, "If [Ψ] ∪ S is consistent then Cn([Ψ] ∪ S) ⊆ [Ψ⊛S].";
    KStar5 => "K-star-5", ["K⊛5"], SetOne, ParallelRevision, "If S is consistent then so is [Ψ⊛S].";
    KStar6 => "K-star-6", ["K⊛6"], SetTwo, ParallelRevision, "If Cn(S1) = Cn(S2) then [Ψ⊛S1] = [Ψ⊛S2].";
    KStar6Minus => "K-star-6-", ["K⊛6-", "K⊛6−"], SetOne, ParallelRevision, "Member-wise equivalent sets give the same belief set.";
    KStar7 => "K-star-7", ["K⊛7"], SetTwo, ParallelRevision, "[Ψ⊛(S1∪S2)] ⊆ Cn([Ψ⊛S1] ∪ S2).";
    KStar8 => "K-star-8", ["K⊛8"], SetTwo, ParallelRevision, "If [Ψ⊛S1] ∪ S2 is consistent then Cn([Ψ⊛S1] ∪ S2) ⊆ [Ψ⊛(S1∪S2)].";
    CStar1 => "C-star-1", ["C⊛1"], SetOne, ParallelRevision, "x,y ∈ ⟦⋀S⟧: x ⪯_{Ψ⊛S} y iff x ⪯_Ψ y.";
    CStar2 => "C-star-2", ["C⊛2"], SetOne, ParallelRevision, "x,y ∈ ⟦⋀¬S⟧: x ⪯_{Ψ⊛S} y iff x ⪯_Ψ y.";
    CStar3 => "C-star-3", ["C⊛3"], SetOne, ParallelRevision, "x ∈ ⟦⋀S⟧, y ∉ ⟦⋀S⟧, x ≺_Ψ y ⇒ x ≺_{Ψ⊛S} y.";
    CStar4 => "C-star-4", ["C⊛4"], SetOne, ParallelRevision, "x ∈ ⟦⋀S⟧, y ∉ ⟦⋀S⟧, x ⪯_Ψ y ⇒ x ⪯_{Ψ⊛S} y.";
    CStar1b => "C-star-1b", ["C⊛1b"], SetTwo, ParallelRevision, "If S1 ⊆ Cn(S2) then [(Ψ⊛S1)⊛S2] = [Ψ⊛S2].";
    CStar2b => "C-star-2b", ["C⊛2b"], SetTwo, ParallelRevision, "If ¬S1 ⊆ Cn(S2) then [(Ψ⊛S1)⊛S2] = [Ψ⊛S2].";
    CStar3b => "C-star-3b", ["C⊛3b"], SetTwo, ParallelRevision, "If S1 ⊆ [Ψ⊛S2] then S1 ⊆ [(Ψ⊛S1)⊛S2].";
    CStar4b => "C-star-4b", ["C⊛4b"], SetTwo, ParallelRevision, "If S1 ∪ [Ψ⊛S2] is consistent then so is S1 ∪ [(Ψ⊛S1)⊛S2].";
    CStar2Plus => "C-star-2+", ["C⊛2+"], SetOne, ParallelRevision, "x,y ∉ ⟦⋀S⟧: x ⪯_{Ψ⊛S} y iff x ⪯_Ψ y.";
    Pc3 => "PC3", [], SetOne, ParallelRevision, "(S|y) ⊆ (S|x) and x ≺_Ψ y ⇒ x ≺_{Ψ⊛S} y.";
    Pc4 => "PC4", [], SetOne, ParallelRevision, "(S|y) ⊆ (S|x) and x ⪯_Ψ y ⇒ x ⪯_{Ψ⊛S} y.";
    Pc3b => "PC3b", [], SetTwoProp, ParallelRevision, "If S2 ≠ ∅ and A ∈ [Ψ⊛(S∪S2)] for every S ⊆ S1 consistent with S2, then A ∈ [(Ψ⊛S1)⊛S2].";
    Pc4b => "PC4b", [], SetTwoProp, ParallelRevision, "If S2 ≠ ∅ and ¬A ∉ [Ψ⊛(S∪S2)] for every S ⊆ S1 consistent with S2, then ¬A ∉ [(Ψ⊛S1)⊛S2].";
    IndStar => "Ind-star", ["Ind⊛"], SetOne, ParallelRevision, "x ∈ ⟦⋀S⟧, y ∉ ⟦⋀S⟧, x ⪯_Ψ y ⇒ x ≺_{Ψ⊛S} y.";
    SStar => "S-star", ["S⊛"], SetTwo, ParallelRevision, "min(⪯_Ψ, ⟦⋀(S1∪S2)⟧) = min(⪯_{Ψ⊛(S1∪¬S2)}, ⟦⋀(S1∪S2)⟧).";
    GrStar => "GR-star", ["GR⊛"], SetOne, ParallelRevision, "min(⪯_{Ψ⊛¬S}, ⟦⋀S⟧) = min(⪯_Ψ, ⟦⋀S⟧).";
    PStar => "P-star", ["P⊛"], SetTwo, ParallelRevision, "If S1 ∪ S2 is consistent then min(⪯_{Ψ⊛(S1∪¬S2)}, ⟦⋀S2⟧) ⊆ ⟦⋀S1⟧.";
    LiParallel => "LI-parallel", ["LI°"], SetOne, ParallelContraction, "If S is consistent then so is Cn([Ψ⊖¬S] ∪ S).";
    HiParallel => "HI-parallel", ["HI°"], SetOne, ParallelContraction, "[Ψ⊖S] = [Ψ] ∩ [Ψ⊛¬S].";
    CMinus1 => "C-minus-1", ["C⊖1"], SetOne, ParallelContraction, "x,y ∈ ⟦⋀¬S⟧: x ⪯_{Ψ⊖S} y iff x ⪯_Ψ y.";
    CMinus2 => "C-minus-2", ["C⊖2"], SetOne, ParallelContraction, "x,y ∈ ⟦⋀S⟧: x ⪯_{Ψ⊖S} y iff x ⪯_Ψ y.";
    CMinus3 => "C-minus-3", ["C⊖3"], SetOne, ParallelContraction, "x ∈ ⟦⋀¬S⟧, y ∉ ⟦⋀¬S⟧, x ≺_Ψ y ⇒ x ≺_{Ψ⊖S} y.";
    CMinus4 => "C-minus-4", ["C⊖4"], SetOne, ParallelContraction, "x ∈ ⟦⋀¬S⟧, y ∉ ⟦⋀¬S⟧, x ⪯_Ψ y ⇒ x ⪯_{Ψ⊖S} y.";
    Intersective => "Intersective", [], SetOne, ParallelContraction, "[Ψ⊖{A1,…,An}] = ⋂ [Ψ∸Ai].";
    DiP => "DiP", ["DiP⊖"], SetOne, ParallelContraction, "Checked negated: for consistent S, ⋁S ∉ [Ψ⊖S]. A violation is a witness of the principle.";
    FAgg => "F-agg", ["F⊕"], ProfileSubset, Aggregation, "min(⪯_⊕, S) = ⋃_{j∈X} min(⪯_j, S) for some X ⊆ I.";
    ParAgg => "PAR-agg", ["PAR⊕"], ProfileSubset, Aggregation, "Parity, in both its min-set and its relational form.";
    Ub => "UB", [], ProfileSubset, Aggregation, "min(⪯_⊕, S) ⊆ ⋃_i min(⪯_i, S).";
    Lb => "LB", [], ProfileSubset, Aggregation, "min(⪯_i, S) ⊆ min(⪯_⊕, S) for some i.";
    Spu => "SPU", [], ProfileSubset, Aggregation, "x ≺_i y for all i ⇒ x ≺_⊕ y.";
    Wpu => "WPU", [], ProfileSubset, Aggregation, "x ⪯_i y for all i ⇒ x ⪯_⊕ y.";
}

impl PostulateId {
    /// Parses a catalog name or one of its Unicode aliases.
    pub fn parse(text: &str) -> Result<PostulateId> {
        let text = text.trim();
        PostulateId::ALL
            .iter()
            .copied()
            .find(|id| id.name() == text || id.aliases().contains(&text))
            .ok_or_else(|| Error::UnknownPostulate(text.to_string()))
    }

    /// The semantic/syntactic pairs whose agreement can be cross-checked.
    pub const EQUIVALENCE_PAIRS: &'static [(PostulateId, PostulateId)] = &[
        (PostulateId::CStar1, PostulateId::CStar1b),
        (PostulateId::CStar2, PostulateId::CStar2b),
        (PostulateId::CStar3, PostulateId::CStar3b),
        (PostulateId::CStar4, PostulateId::CStar4b),
        (PostulateId::Pc3, PostulateId::Pc3b),
        (PostulateId::Pc4, PostulateId::Pc4b),
    ];
}

impl fmt::Display for PostulateId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for PostulateId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        PostulateId::parse(s)
    }
}

impl Serialize for PostulateId {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

impl<'de> Deserialize<'de> for PostulateId {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        PostulateId::parse(&text).map_err(serde::de::Error::custom)
    }
}
