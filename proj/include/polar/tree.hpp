#pragma once

#include "polar/bits.hpp"
#include "polar/node_id.hpp"

#include <map>
#include <span>
#include <string>
#include <vector>

namespace polar {

struct CodeSpec;

enum class NodeType { Rate0, Rate1, Rep, Spc, RateC };
enum class SourceType { Rate0, Rate1, EgPc, RateC };

const char* to_string(NodeType t);
const char* to_string(SourceType t);

NodeType classify(std::span<const std::uint8_t> d);

struct SrDescriptor {
	NodeId owner;
	Bits v;            // v[0] belongs to the left child of the owner, v.back() to the source's sibling
	SourceType snt = SourceType::RateC;
	int r = 0;
	int E = 0;         // source node index at level r
	std::vector<Bits> sequences;      // listing order, length 2^{j-r}
	std::vector<Bits> tree_sequences; // same sequences indexed by natural-order block m
	bool egpc_leftmost_rep = false;
	int egpc_level = 0;     // level r' of the leftmost descendant
	int egpc_block_len = 0; // 2^{r-r'}
	Bits source_frozen;     // flags of the source node, length 2^r

	int j() const { return owner.j; }
	int weight_v() const { return popcount(v); }
	std::size_t path_count() const { return sequences.size(); }
	// SR(empty, Rate-C, j) carries no structure: an ordinary node.
	bool is_general() const { return v.empty() && snt == SourceType::RateC; }
};

// Listing order: eta at the lowest level toggles fastest; each sequence is the
// Kronecker sum (eta_r,0) [+] ... [+] (eta_{j-1},0). v is given top level first.
std::vector<Bits> repetition_sequences(std::span<const std::uint8_t> v);

// Largest SR structure rooted at `owner` with frozen flags `d` (length 2^j).
SrDescriptor describe_sr(std::span<const std::uint8_t> d, NodeId owner = {});

int sr_time_steps(const SrDescriptor& desc);

struct CycleModel {
	long P = 0;          // processing elements; 0 means unlimited
	long sr_pipeline = 0; // extra cycles per SR node
};

long general_node_cycles(int j, const CycleModel& m);
long sr_node_cycles(const SrDescriptor& desc, const CycleModel& m);

// Cover of the tree: decoding order (left to right) and a heap-indexed map from node
// to cover entry (>= 0), general node (kGeneral) or node inside an SR subtree (kInside).
struct DecodePlan {
	static constexpr int kGeneral = -1;
	static constexpr int kInside = -2;

	int n = 0;
	std::vector<SrDescriptor> cover;
	std::vector<int> node_kind;

	int general_count() const;
};

std::vector<SrDescriptor> identify_sr_cover(const CodeSpec& spec);
DecodePlan make_plan(const CodeSpec& spec);
DecodePlan make_plan(int n, std::vector<SrDescriptor> cover);

struct LatencyEntry {
	NodeId node;
	std::string kind;
	long steps = 0;
	long cycles = 0;
};

struct LatencyReport {
	long time_steps = 0;
	long cycles = 0;
	std::vector<LatencyEntry> breakdown;
};

enum class Schedule { Sc, Srfsc };

LatencyReport schedule_time_steps(const CodeSpec& spec, const DecodePlan& plan, Schedule mode,
	const CycleModel& model = {});
long semi_parallel_cycles(const CodeSpec& spec, const DecodePlan& plan, long P, long sr_pipeline = 0);
long batch_cycles(long width, long P);

struct Census {
	int sr_count = 0;
	int general_count = 0;
	std::map<std::size_t, int> by_sequence_count;               // |S| -> count
	std::map<std::size_t, std::map<int, int>> levels_by_sequences; // |S| -> level -> count
	std::map<std::string, int> by_source;
};

Census node_census(const CodeSpec& spec, const DecodePlan& plan);

} // namespace polar

namespace polar {

// "SR((0,1),EG-PC,2)"
std::string label(const SrDescriptor& desc);

} // namespace polar
