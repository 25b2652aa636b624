#include "covdyn/proximity.hpp"

#include <sstream>

namespace covdyn {

namespace {

void require_same_family(const PColl& a, const PColl& b)
{
    if (a.family().token() != b.family().token())
        throw Error(Errc::FamilyMismatch, "collections belong to different families");
}

/// Largest prefix {0..p} inside bits, as a chain collection.
IndexSet prefix_of(const IndexSet& bits)
{
    IndexSet out(bits.size());
    for (std::size_t i = 0; i < bits.size() && bits.test(i); ++i) out.set(i);
    return out;
}

} // namespace

PColl PColl::full(const AdmissibleFamily& family)
{
    return PColl(family, full_set(family.size()));
}

PColl PColl::none(const AdmissibleFamily& family)
{
    return PColl(family, IndexSet(family.size()));
}

PColl PColl::from_threshold(const AdmissibleFamily& family, long threshold)
{
    if (!family.is_chain()) throw Error(Errc::ChainKindUnsupported, "thresholds only describe chain collections");
    if (threshold < -1) throw Error(Errc::InvalidArgument, "threshold below -1");
    IndexSet bits(family.size());
    for (long i = 0; i <= threshold && static_cast<std::size_t>(i) < family.size(); ++i) bits.set(static_cast<std::size_t>(i));
    return PColl(family, std::move(bits));
}

PColl PColl::from_indices(const AdmissibleFamily& family, IndexSet indices)
{
    if (indices.size() != family.size()) throw Error(Errc::FamilyMismatch, "index set has wrong size");
    // Chains are hereditary by their prefix shape; repeated identical levels are tolerated.
    if (family.is_chain()) {
        if (prefix_of(indices) != indices) throw Error(Errc::NotUpwardHereditary, "chain collection is not a prefix");
        return PColl(family, std::move(indices));
    }
    for (auto i = indices.find_first(); i != IndexSet::npos; i = indices.find_next(i))
        for (std::size_t j = 0; j < family.size(); ++j)
            if (family.refines(i, j) && !indices.test(j)) {
                std::ostringstream os;
                os << "covering " << i << " present but its coarsening " << j << " missing";
                throw Error(Errc::NotUpwardHereditary, os.str());
            }
    return PColl(family, std::move(indices));
}

long PColl::threshold() const
{
    if (!family_->is_chain()) throw Error(Errc::ChainKindUnsupported, "threshold requested on a finite family");
    if (bits_.all()) return infinity;
    return static_cast<long>(bits_.count()) - 1;
}

std::string PColl::to_string() const
{
    if (family_->is_chain()) {
        const long t = threshold();
        if (t == infinity) return "O";
        return "<=" + std::to_string(t);
    }
    if (is_full()) return "O";
    std::string out = "{";
    bool first = true;
    for (auto i = bits_.find_first(); i != IndexSet::npos; i = bits_.find_next(i)) {
        if (!first) out += ',';
        out += std::to_string(i);
        first = false;
    }
    return out + "}";
}

PColl operator&(const PColl& a, const PColl& b)
{
    require_same_family(a, b);
    return PColl(*a.family_, a.bits_ & b.bits_);
}

PColl operator|(const PColl& a, const PColl& b)
{
    require_same_family(a, b);
    return PColl(*a.family_, a.bits_ | b.bits_);
}

bool precedes(const PColl& e1, const PColl& e2)
{
    require_same_family(e1, e2);
    return e2.indices().is_subset_of(e1.indices());
}

PColl n_op(const PColl& e, unsigned n)
{
    if (n == 0) throw Error(Errc::InvalidArgument, "n_op needs n >= 1");
    const auto& family = e.family();
    // A truncated chain cannot exhibit refinements of its finest level; O is fixed by convention.
    if (family.is_chain() && e.is_full()) return e;
    const std::size_t m = family.size();
    IndexSet reach = e.indices();
    for (unsigned step = 0; step < n; ++step) {
        IndexSet next(m);
        for (auto i = reach.find_first(); i != IndexSet::npos; i = reach.find_next(i))
            for (std::size_t j = 0; j < m; ++j)
                if (family.double_refines(i, j)) next.set(j);
        reach = std::move(next);
    }
    if (family.is_chain()) reach = prefix_of(reach);
    return PColl::from_indices(family, std::move(reach));
}

ConvergenceTrace convergence_trace(std::span<const PColl> seq)
{
    ConvergenceTrace trace;
    if (seq.empty()) return trace;
    const std::size_t m = seq.front().family().size();
    for (const auto& e : seq) require_same_family(e, seq.front());
    trace.settle.assign(m, std::nullopt);
    trace.converges = true;
    for (std::size_t i = 0; i < m; ++i) {
        std::size_t k0 = seq.size();
        while (k0 > 0 && seq[k0 - 1].contains(i)) --k0;
        if (k0 < seq.size())
            trace.settle[i] = k0;
        else
            trace.converges = false;
    }
    return trace;
}

bool converges_to_O(std::span<const PColl> seq)
{
    return convergence_trace(seq).converges;
}

PColl rho(PointIndex x, PointIndex y, const AdmissibleFamily& family)
{
    const std::size_t n = family.universe();
    if (x >= n || y >= n) throw Error(Errc::InvalidArgument, "point outside the space");
    IndexSet bits(family.size());
    for (std::size_t i = 0; i < family.size(); ++i)
        if (family.at(i).point_star(x).test(y)) bits.set(i);
    return PColl::from_indices(family, std::move(bits));
}

RhoFn rho_of(const AdmissibleFamily& family)
{
    return [&family](PointIndex x, PointIndex y) { return rho(x, y, family); };
}

PColl rho_point_set(PointIndex x, const PointSet& a, const AdmissibleFamily& family)
{
    return rho_point_set(x, a, family, rho_of(family));
}

PColl rho_point_set(PointIndex x, const PointSet& a, const AdmissibleFamily& family, const RhoFn& rho_fn)
{
    if (a.none()) throw Error(Errc::EmptyInput, "rho(x, A) needs a nonempty A");
    PColl out = PColl::none(family);
    for_each_point(a, [&](PointIndex y) {
        if (!out.is_full()) out = out | rho_fn(x, y);
    });
    return out;
}

PColl rho_semi(const PointSet& a, const PointSet& b, const AdmissibleFamily& family)
{
    return rho_semi(a, b, family, rho_of(family));
}

PColl rho_semi(const PointSet& a, const PointSet& b, const AdmissibleFamily& family, const RhoFn& rho_fn)
{
    if (a.none() || b.none()) throw Error(Errc::EmptyInput, "rho_A(B) needs nonempty A and B");
    PColl out = PColl::full(family);
    for_each_point(b, [&](PointIndex y) {
        if (!out.is_empty()) out = out & rho_point_set(y, a, family, rho_fn);
    });
    return out;
}

} // namespace covdyn
