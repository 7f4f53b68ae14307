#pragma once

#include <string>

#include "graph.hpp"

namespace interplan {

// Line-oriented text formats.
//
//   vertices: A B C ...          (first content line; order fixes indices)
//   A -> B                       directed, A causes B
//   A -- B                       undirected
//   A ~> B                       semi-directed, A the possible cause
//   A !! B                       non-adjacent
//   A ?? B                       explicit no-knowledge (the default)
//
// '#' starts a comment line, blank lines are skipped, and each unordered pair
// may appear at most once. A .dag file uses the same header but accepts only
// '->' lines and must be acyclic.

KnowledgeGraph parse_kg(const std::string& text);
Dag parse_dag(const std::string& text);

// Pairs with a non-default mark, in lexicographic pair order.
std::string format_kg(const KnowledgeGraph& kg);
std::string format_dag(const Dag& g);

KnowledgeGraph read_kg_file(const std::string& path);
Dag read_dag_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace interplan
