#pragma once

#include "derivedlab/derived.hpp"

#include <optional>

namespace dlab {

struct NotAcyclic : ComputeError {
    using ComputeError::ComputeError;
};

// Finite witness that a bounded complex is acyclic. Each node names one
// acyclicity-preserving construction; leaves are totalizations of short exact
// sequences. subject() recomputes the complex a node certifies.
struct AbsAcyclicCert {
    enum class Node { Tot, Cone, HtpyEquiv, Summand, Shift };

    Node node = Node::Tot;
    std::optional<ComplexSES> ses;  // Tot: subject = tot_ses(*ses)
    std::optional<ChainMap> t;      // Cone: subject = cone(*t), children certify src/dst
    std::optional<ChainMap> f, g;   // HtpyEquiv: f: A -> subject, g back (A = child subject)
                                    // Summand: f: subject -> A split by g
    std::optional<Homotopy> ha, hb; // HtpyEquiv: boundaries id_A - g∘f and id_B - f∘g
    int k = 0;                      // Shift: subject = Σ^k(child subject)
    std::vector<AbsAcyclicCert> children;

    Complex subject() const;
};

struct CertCheck {
    bool ok = true;
    std::string path;   // first failing node, e.g. "/equiv/shift/tot"
    std::string reason;
};
CertCheck verify_certificate(const AbsAcyclicCert& c);

// certificate for C.trimmed(); throws NotAcyclic when C has cohomology
AbsAcyclicCert certify_bounded_acyclic(const Complex& C);

// a certified acyclic subcomplex containing the spanned degreewise generators
struct CompletedSub {
    SubComplexData sub; // inclusion into the ambient certified complex
    AbsAcyclicCert cert;
};
using SubCompleter = std::function<CompletedSub(const std::map<int, ZmMat>&)>;

// ambient complex is tot_ses(ses); covers from U keep the new part small
CompletedSub complete_subcomplex_tot(const ComplexSES& ses, const std::map<int, ZmMat>& D,
                                     const SubcategorySpec& U);

// ambient complex is cone(t); the completers handle the two legs
CompletedSub complete_subcomplex_cone(const ChainMap& t, const SubCompleter& complete_src,
                                      const SubCompleter& complete_dst,
                                      const std::map<int, ZmMat>& D);

// a verified-acyclic source forces every chain map to a bounded complex of
// injectives to be null-homotopic; on failure the witness is a nonzero class
struct HomVanishing {
    bool ok = true;
    std::optional<ChainMap> witness;
};
HomVanishing hom_K_vanishing(const AbsAcyclicCert& cert, const Complex& I);

} // namespace dlab
