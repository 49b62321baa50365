#include "polar/tree.hpp"
#include "polar/code.hpp"

#include <algorithm>
#include <stdexcept>

namespace polar {

const char* to_string(NodeType t)
{
	switch (t) {
	case NodeType::Rate0: return "Rate-0";
	case NodeType::Rate1: return "Rate-1";
	case NodeType::Rep: return "REP";
	case NodeType::Spc: return "SPC";
	case NodeType::RateC: return "Rate-C";
	}
	return "?";
}

const char* to_string(SourceType t)
{
	switch (t) {
	case SourceType::Rate0: return "Rate-0";
	case SourceType::Rate1: return "Rate-1";
	case SourceType::EgPc: return "EG-PC";
	case SourceType::RateC: return "Rate-C";
	}
	return "?";
}

namespace {

bool all_equal(std::span<const std::uint8_t> d, std::uint8_t value)
{
	return std::all_of(d.begin(), d.end(), [value](std::uint8_t b) { return b == value; });
}

bool is_rep(std::span<const std::uint8_t> d)
{
	return d.back() == 1 && all_equal(d.first(d.size() - 1), 0);
}

// Smallest r' < level-1 such that the leftmost 2^{r'} flags are Rate-0 or REP and the rest are
// all information. Returns -1 if there is none.
int egpc_leftmost_level(std::span<const std::uint8_t> d, int level)
{
	for (int rp = 0; rp < level - 1; ++rp) {
		const std::size_t w = std::size_t(1) << rp;
		if (!all_equal(d.subspan(w), 1))
			continue;
		const auto head = d.first(w);
		if (all_equal(head, 0) || is_rep(head))
			return rp;
	}
	return -1;
}

} // namespace

NodeType classify(std::span<const std::uint8_t> d)
{
	if (d.empty() || (d.size() & (d.size() - 1)))
		throw std::invalid_argument("classify: length must be a power of two");
	if (all_equal(d, 0))
		return NodeType::Rate0;
	if (all_equal(d, 1))
		return NodeType::Rate1;
	if (is_rep(d))
		return NodeType::Rep;
	if (d[0] == 0 && all_equal(d.subspan(1), 1))
		return NodeType::Spc;
	return NodeType::RateC;
}

std::vector<Bits> repetition_sequences(std::span<const std::uint8_t> v)
{
	const int L = int(v.size());
	// factor t (t = 0 for the lowest level) is v[L-1-t]
	std::vector<int> free_factors;
	for (int t = 0; t < L; ++t)
		if (v[L - 1 - t])
			free_factors.push_back(t);
	const std::size_t count = std::size_t(1) << free_factors.size();
	const std::size_t len = std::size_t(1) << L;
	std::vector<Bits> out(count, Bits(len, 0));
	for (std::size_t l = 0; l < count; ++l) {
		for (std::size_t b = 0; b < free_factors.size(); ++b) {
			if (!((l >> b) & 1))
				continue;
			// (eta,0) of factor t is indexed by bit L-1-t of the position
			const int bit = L - 1 - free_factors[b];
			for (std::size_t p = 0; p < len; ++p)
				if (!((p >> bit) & 1))
					out[l][p] ^= 1;
		}
	}
	return out;
}

SrDescriptor describe_sr(std::span<const std::uint8_t> d, NodeId owner)
{
	if (d.empty() || (d.size() & (d.size() - 1)))
		throw std::invalid_argument("describe_sr: length must be a power of two");
	const int j = std::bit_width(d.size()) - 1;
	if (owner.j != j)
		owner = {j, owner.i > 0 ? owner.i : 1};

	SrDescriptor desc;
	desc.owner = owner;
	auto seg = d;
	int level = j;
	for (;;) {
		if (all_equal(seg, 0)) {
			desc.snt = SourceType::Rate0;
			break;
		}
		if (all_equal(seg, 1)) {
			desc.snt = SourceType::Rate1;
			break;
		}
		const std::size_t half = seg.size() / 2;
		const auto left = seg.first(half);
		if (all_equal(left, 0)) {
			desc.v.push_back(0);
			seg = seg.subspan(half);
			--level;
			continue;
		}
		const int rp = egpc_leftmost_level(seg, level);
		if (rp >= 0) {
			desc.snt = SourceType::EgPc;
			desc.egpc_level = rp;
			desc.egpc_block_len = 1 << (level - rp);
			desc.egpc_leftmost_rep = !all_equal(seg.first(std::size_t(1) << rp), 0);
			break;
		}
		if (is_rep(left)) {
			desc.v.push_back(1);
			seg = seg.subspan(half);
			--level;
			continue;
		}
		desc.snt = SourceType::RateC;
		break;
	}
	desc.r = level;
	desc.E = owner.i << (j - level);
	desc.source_frozen.assign(seg.begin(), seg.end());
	desc.sequences = repetition_sequences(desc.v);
	const int L = j - level;
	desc.tree_sequences.reserve(desc.sequences.size());
	for (const auto& s : desc.sequences) {
		Bits t(s.size());
		for (std::size_t m = 0; m < s.size(); ++m)
			t[m] = s[bit_reverse(std::uint32_t(m), L)];
		desc.tree_sequences.push_back(std::move(t));
	}
	return desc;
}

std::string label(const SrDescriptor& desc)
{
	std::string s = "SR(";
	if (desc.v.empty()) {
		s += "()";
	} else {
		s += "(";
		for (std::size_t k = 0; k < desc.v.size(); ++k) {
			if (k)
				s += ",";
			s += char('0' + desc.v[k]);
		}
		s += ")";
	}
	s += ",";
	s += to_string(desc.snt);
	s += "," + std::to_string(desc.r) + ")";
	return s;
}

int sr_time_steps(const SrDescriptor& desc)
{
	const int t1 = desc.v.empty() ? 0 : 1;
	int t2 = 0;
	switch (desc.snt) {
	case SourceType::Rate0:
	case SourceType::Rate1: t2 = 0; break;
	case SourceType::EgPc: t2 = desc.egpc_leftmost_rep ? 2 : 1; break;
	case SourceType::RateC: t2 = (2 << desc.r) - 2; break;
	}
	const int t3 = desc.sequences.size() > 1 ? 2 : 0;
	return t1 + std::max(t2, t3 - 1);
}

long batch_cycles(long width, long P)
{
	if (P <= 0 || width <= P)
		return 1;
	return (width + P - 1) / P;
}

long general_node_cycles(int j, const CycleModel& m)
{
	return 2 * batch_cycles(j > 0 ? 1L << (j - 1) : 1, m.P);
}

long sr_node_cycles(const SrDescriptor& desc, const CycleModel& m)
{
	const int j = desc.j();
	return long(sr_time_steps(desc)) * batch_cycles(j > 0 ? 1L << (j - 1) : 1, m.P) + m.sr_pipeline;
}

namespace {

struct CoverResult {
	std::vector<SrDescriptor> nodes;
	long cost = 0;
};

CoverResult cover_rec(std::span<const std::uint8_t> d, NodeId node)
{
	CoverResult out;
	SrDescriptor desc = describe_sr(d, node);
	if (desc.snt != SourceType::RateC) {
		out.cost = sr_time_steps(desc);
		out.nodes.push_back(std::move(desc));
		return out;
	}
	const std::size_t half = d.size() / 2;
	CoverResult l = cover_rec(d.first(half), node.left());
	CoverResult r = cover_rec(d.subspan(half), node.right());
	const long split_cost = 2 + l.cost + r.cost;
	// A Rate-C source is decoded by plain SC; keep it only when that does not cost more than
	// decomposing the node.
	if (!desc.v.empty() && sr_time_steps(desc) <= split_cost) {
		out.cost = sr_time_steps(desc);
		out.nodes.push_back(std::move(desc));
		return out;
	}
	out.cost = split_cost;
	out.nodes = std::move(l.nodes);
	std::move(r.nodes.begin(), r.nodes.end(), std::back_inserter(out.nodes));
	return out;
}

} // namespace

std::vector<SrDescriptor> identify_sr_cover(const CodeSpec& spec)
{
	return cover_rec(spec.d, NodeId{spec.n, 1}).nodes;
}

int DecodePlan::general_count() const
{
	return int(std::count(node_kind.begin(), node_kind.end(), kGeneral));
}

DecodePlan make_plan(int n, std::vector<SrDescriptor> cover)
{
	DecodePlan plan;
	plan.n = n;
	plan.cover = std::move(cover);
	const std::size_t N = std::size_t(1) << n;
	plan.node_kind.assign(2 * N, DecodePlan::kInside);
	plan.node_kind[0] = DecodePlan::kInside;
	std::vector<std::uint8_t> covered(2 * N, 0);
	for (std::size_t s = 0; s < plan.cover.size(); ++s) {
		const std::size_t h = heap_index(plan.cover[s].owner, n);
		if (covered[h])
			throw std::invalid_argument("make_plan: overlapping cover");
		plan.node_kind[h] = int(s);
		// ancestors are general
		for (std::size_t a = h / 2; a >= 1; a /= 2) {
			if (plan.node_kind[a] >= 0)
				throw std::invalid_argument("make_plan: nested SR nodes");
			plan.node_kind[a] = DecodePlan::kGeneral;
		}
		// descendants are inside
		for (std::size_t lo = h, hi = h; lo < 2 * N; lo = 2 * lo, hi = 2 * hi + 1)
			for (std::size_t x = lo; x <= hi; ++x)
				covered[x] = 1;
	}
	for (std::size_t k = N; k < 2 * N; ++k)
		if (!covered[k])
			throw std::invalid_argument("make_plan: cover leaves a gap");
	return plan;
}

DecodePlan make_plan(const CodeSpec& spec) { return make_plan(spec.n, identify_sr_cover(spec)); }

LatencyReport schedule_time_steps(const CodeSpec& spec, const DecodePlan& plan, Schedule mode,
	const CycleModel& model)
{
	LatencyReport rep;
	const std::size_t N = std::size_t(spec.N);
	auto add = [&](NodeId id, std::string kind, long steps, long cycles) {
		rep.time_steps += steps;
		rep.cycles += cycles;
		rep.breakdown.push_back({id, std::move(kind), steps, cycles});
	};
	// preorder walk keeps the breakdown in decoding order
	std::vector<std::size_t> stack{1};
	while (!stack.empty()) {
		const std::size_t h = stack.back();
		stack.pop_back();
		if (h >= N && mode == Schedule::Sc)
			continue;
		const NodeId id = node_at(h, spec.n);
		if (mode == Schedule::Sc || plan.node_kind[h] == DecodePlan::kGeneral) {
			add(id, "general", 2, general_node_cycles(id.j, model));
			stack.push_back(2 * h + 1);
			stack.push_back(2 * h);
		} else if (plan.node_kind[h] >= 0) {
			const SrDescriptor& desc = plan.cover[plan.node_kind[h]];
			add(id, label(desc), sr_time_steps(desc), sr_node_cycles(desc, model));
		}
	}
	return rep;
}

long semi_parallel_cycles(const CodeSpec& spec, const DecodePlan& plan, long P, long sr_pipeline)
{
	return schedule_time_steps(spec, plan, Schedule::Srfsc, CycleModel{P, sr_pipeline}).cycles;
}

Census node_census(const CodeSpec&, const DecodePlan& plan)
{
	Census c;
	c.sr_count = int(plan.cover.size());
	c.general_count = plan.general_count();
	for (const auto& d : plan.cover) {
		++c.by_sequence_count[d.path_count()];
		++c.levels_by_sequences[d.path_count()][d.j()];
		++c.by_source[to_string(d.snt)];
	}
	return c;
}

} // namespace polar
