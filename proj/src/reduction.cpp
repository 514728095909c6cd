#include "conductor/reduction.hpp"

#include <string>

namespace conductor {

std::uint32_t ceil_sqrt(std::uint64_t t) {
    std::uint64_t r = 0;
    while (r * r < t) ++r;
    return static_cast<std::uint32_t>(r == 0 ? 1 : r);
}

ConductorState replay(const GameTrace& trace) {
    auto state = new_game(trace.params.n, trace.params.t, trace.params.rule);
    for (const auto& stop : trace.stops) state = apply_stop(std::move(state), stop.request, stop.decision);
    return state;
}

RectGameState replay(const RectTrace& trace) {
    auto state = new_rect_game(trace.params);
    for (const auto& [r, l] : trace.moves) state = apply_label(std::move(state), r, l);
    return state;
}

std::pair<Rectangle, RectLabel> stop_to_rectangle(const StopRequest& req, Decision d) {
    if (!req.conflicting())
        throw GameError(ErrorKind::non_conflicting_stop, "only stops with both sides nonempty map to rectangles");
    return {Rectangle(req.on_set, req.off_set), d == Decision::on ? RectLabel::horizontal : RectLabel::vertical};
}

RectTrace trace_to_rect_trace(const GameTrace& trace) {
    RectTrace out;
    const auto side = ceil_sqrt(trace.params.t);
    out.params = make_rect_params(trace.params.n, side, side, 1);
    out.final = new_rect_game(out.params);
    for (std::size_t i = 0; i < trace.stops.size(); ++i) {
        const auto& stop = trace.stops[i];
        if (!stop.request.conflicting()) continue;
        auto [rect, label] = stop_to_rectangle(stop.request, stop.decision);
        if (auto v = validate_rectangle(out.final, rect))
            throw GameError(ErrorKind::disjointness_failure,
                            "image of stop " + std::to_string(i) + " rejected: " + v->message);
        out.final = apply_label(std::move(out.final), rect, label);
        out.moves.emplace_back(std::move(rect), label);
    }
    return out;
}

StopRequest rectangle_to_request(const Rectangle& r) { return StopRequest(r.u_set, r.v_set); }

std::uint64_t EquivalenceReport::total_avoidable() const {
    std::uint64_t total = 0;
    for (auto a : avoidable) total += a;
    return total;
}

EquivalenceReport verify_equivalence(const GameTrace& trace) {
    EquivalenceReport report;
    const std::size_t n = trace.params.n;
    report.avoidable.assign(n, 0);
    for (const auto& stop : trace.stops)
        if (!stop.request.conflicting())
            hurt_by(stop.request, stop.decision).for_each([&](std::size_t p) { ++report.avoidable[p]; });

    const auto image = trace_to_rect_trace(trace);
    const auto counts = replay(image);
    report.rectangles = image.moves.size();
    for (std::size_t p = 0; p < n; ++p) {
        const std::uint32_t u = p < trace.final.unhappiness.size() ? trace.final.unhappiness[p] : 0;
        const std::uint64_t lhs = u;
        const std::uint64_t rhs = std::uint64_t{report.avoidable[p]} + counts.hcount[p] + counts.vcount[p];
        if (lhs != rhs) {
            report.mismatch = Mismatch{p, u, report.avoidable[p], counts.hcount[p], counts.vcount[p]};
            break;
        }
    }
    if (!report.mismatch && trace.final.unhappiness.size() != n)
        report.mismatch = Mismatch{trace.final.unhappiness.size(), 0, 0, 0, 0};
    return report;
}

BoundTransfer check_bound_transfer(const GameTrace& trace, std::uint32_t k) {
    const auto image = trace_to_rect_trace(trace);
    const auto& s = image.final;
    BoundTransfer out;
    const std::uint64_t a = image.params.a, b = image.params.b;
    out.bound = std::uint64_t{k} * (a + b);
    out.premise = max_hcount(s) <= k * a && max_vcount(s) <= k * b;
    out.conclusion = true;
    for (std::size_t p = 0; p < trace.params.n; ++p)
        if (std::uint64_t{s.hcount[p]} + s.vcount[p] > out.bound) out.conclusion = false;
    return out;
}

}  // namespace conductor
