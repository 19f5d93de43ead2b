#include <boost/graph/adjacency_list.hpp>
#include <boost/graph/boyer_myrvold_planar_test.hpp>

#include "glc/predicates.hpp"

namespace glc::detail {

bool abstract_planar(int n, const std::vector<std::pair<int, int>>& edges) {
    using BGraph = boost::adjacency_list<boost::vecS, boost::vecS, boost::undirectedS>;
    BGraph bg(n);
    for (const auto& [a, b] : edges) boost::add_edge(a, b, bg);
    return boost::boyer_myrvold_planarity_test(bg);
}

} // namespace glc::detail
