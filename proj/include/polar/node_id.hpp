#pragma once

#include <bit>
#include <cstddef>

namespace polar {

// Node i (1-based) at level j of a depth-n tree. Leaves are level 0, the root is (n, 1).
struct NodeId {
	int j = 0;
	int i = 1;

	NodeId left() const { return {j - 1, 2 * i - 1}; }
	NodeId right() const { return {j - 1, 2 * i}; }
	std::size_t width() const { return std::size_t(1) << j; }
	// First leaf covered, 0-based.
	std::size_t first_leaf() const { return std::size_t(i - 1) << j; }

	friend bool operator==(const NodeId&, const NodeId&) = default;
};

// Heap numbering: root 1, children of h are 2h and 2h+1, leaf k (0-based) is N+k.
inline std::size_t heap_index(NodeId id, int n)
{
	return (std::size_t(1) << (n - id.j)) + std::size_t(id.i) - 1;
}

inline NodeId node_at(std::size_t h, int n)
{
	const int depth = std::bit_width(h) - 1;
	return {n - depth, int(h - (std::size_t(1) << depth)) + 1};
}

} // namespace polar
