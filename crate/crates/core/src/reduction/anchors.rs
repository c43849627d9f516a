//! Identity strings attached to report rows. `docs/identities.md` lists the same set.

pub const LIE_AXIOMS: &str = "[E_i, E_j] = Σ_k c^k_{ij} E_k";
pub const OMEGA_NONDEGENERATE: &str = "ω = ½ Σ ω_{ij} dx_i ∧ dx_j, ω♭ invertible";
pub const OMEGA_INVARIANT: &str = "A_iᵀ ω + ω A_i = 0";
pub const HAMILTON: &str = "ι_{X♯} ω = d⟨μ, X⟩";
pub const PAIRING: &str = "ω(E_i♯, E_j♯) = ⟨μ, [E_i, E_j]⟩";
pub const MOMENT_EQUIVARIANCE: &str = "ι_{X♯} dμ = ad*_X(μ)";
pub const ANCHOR: &str = "ρ = ρ₀ + η, η(1⊗X) = ad*_X";
pub const ANCHOR_EQUIVARIANCE: &str = "L_X ∘ ρ = ρ ∘ L_X";
pub const KOSZUL_SQUARE: &str = "ι_s ∘ ι_s = 0";
pub const DERHAM_SQUARE: &str = "d ∘ d = 0";
pub const INNER_SQUARE: &str = "δ ∘ δ = 0";
pub const D_DELTA_COMMUTE: &str = "d ∘ δ_X = δ¹_X ∘ d";
pub const LIE_DERIVATIVE_DELTA: &str = "L_{δ_X} = δ";
pub const CARTAN: &str = "L_X = d ∘ ι_X + ι_X ∘ d";
pub const TANGENT: &str = "T_X ≅ cocone(ι*_X T_M → V_X)";
pub const COTANGENT: &str = "T*_X ≅ cone(V*_X → ι*_X T*_M)";
pub const TOT_T: &str = "δ_{Tot(T_{Z/G})} = [−ι_μ 0 0 / ρ₀ ι_μ 0 / η dμ −ι_μ]";
pub const TOT_TSTAR: &str = "δ_{Tot(T*_{Z/G})} = [−ι_μ 0 0 / dμ* ι_μ 0 / η* ρ₀* −ι_μ]";
pub const TOT_DUALITY: &str = "⟨ρ*(dE_j), E_i⟩ = ⟨dE_j, E_i♯ + η(E_i)⟩";
pub const ALPHA: &str = "α(ι_{σ_i}) = σ_i, α*(dE_i) = E_i";
pub const IDENTITY_1: &str = "(ι*_Z ω)♭ ρ₀ = dμ* α*";
pub const IDENTITY_2: &str = "α dμ = ρ₀* (ι*_Z ω)♭";
pub const IDENTITY_3: &str = "α η = η* α*";
pub const OMEGA_RED: &str = "ω♭_red = α + (ι*_Z ω)♭ + α*";
pub const CHAIN_MAP: &str = "ω♭_red δ_{Tot(T_{Z/G})} = δ_{Tot(T*_{Z/G})} ω♭_red";
pub const INVERSE: &str = "ω♭_red ∘ (ω♭_red)⁻¹ = id";
pub const TOT_EQUIVARIANCE: &str = "[L_X, δ_{Tot}] = 0";
pub const OMEGA_RED_EQUIVARIANCE: &str = "L_X ∘ ω♭_red = ω♭_red ∘ L_X";
pub const D_OMEGA: &str = "dω = 0";
pub const CLOSURE: &str = "(s* − t*) ι*_Z ω = ι_μ dθ";
pub const CLOSURE_CHAIN: &str = "d_m⟨μ, E_j⟩(v₁) − d_m⟨μ, E_i⟩(v₂) − ⟨μ, [E_i, E_j]⟩(m)";
pub const MULTIPLICATIVE: &str = "(m*θ)_{(g₁,g₂)} = Ad_{g₂^{-1}} pr₁*θ + pr₂*θ";
pub const COCYCLE: &str = "∂* dθ = 0";
pub const MAURER_CARTAN: &str = "dθ + ½[θ, θ] = 0";
pub const PULLBACK: &str = "u*θ_i = 0";
pub const REDUCTION: &str = "π*ω_red = ω|_Z̄";
pub const ACTION_EQUIVARIANCE: &str = "(Ad_{g^{-1}} X)♯ = g_* X♯";
pub const COADJOINT_EQUIVARIANCE: &str = "ad*_{Ad_{g^{-1}}X} = Ad*_{g^{-1}} ∘ ad*_X ∘ Ad*_g";
pub const OMEGA_G_INVARIANT: &str = "g*ω = ω";
pub const POINT: &str = "T_m M →^{D_m s} E_m";

pub const ALL: &[&str] = &[
    LIE_AXIOMS,
    OMEGA_NONDEGENERATE,
    OMEGA_INVARIANT,
    HAMILTON,
    PAIRING,
    MOMENT_EQUIVARIANCE,
    ANCHOR,
    ANCHOR_EQUIVARIANCE,
    KOSZUL_SQUARE,
    DERHAM_SQUARE,
    INNER_SQUARE,
    D_DELTA_COMMUTE,
    LIE_DERIVATIVE_DELTA,
    CARTAN,
    TANGENT,
    COTANGENT,
    TOT_T,
    TOT_TSTAR,
    TOT_DUALITY,
    ALPHA,
    IDENTITY_1,
    IDENTITY_2,
    IDENTITY_3,
    OMEGA_RED,
    CHAIN_MAP,
    INVERSE,
    TOT_EQUIVARIANCE,
    OMEGA_RED_EQUIVARIANCE,
    D_OMEGA,
    CLOSURE,
    CLOSURE_CHAIN,
    MULTIPLICATIVE,
    COCYCLE,
    MAURER_CARTAN,
    PULLBACK,
    REDUCTION,
    ACTION_EQUIVARIANCE,
    COADJOINT_EQUIVARIANCE,
    OMEGA_G_INVARIANT,
    POINT,
];
