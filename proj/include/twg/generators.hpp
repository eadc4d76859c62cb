#pragma once

#include <cstdint>
#include <vector>

#include "twg/map.hpp"

namespace twg {

// Quadrangulated n x n torus grid, Euler genus 2; n >= 3.
CombinatorialMap toroidal_grid(int n);

// K6 triangulating the projective plane (Euler genus 1), derived from the
// antipodal quotient of the icosahedron.
CombinatorialMap projective_k6();

// K7 triangulating the torus (Euler genus 2).
CombinatorialMap torus_k7();

// Randomly grown triangulation of Euler genus g (1..8) with roughly n
// vertices: a small base surface, random vertex insertions and edge flips,
// and tube surgeries raising the genus in steps of two.
CombinatorialMap random_triangulation(int genus, int n, uint64_t seed);

// Random triangulated disk: a planar triangulation whose face 0 is a cycle of
// `boundary` vertices. n counts total vertices; boundary >= 3.
CombinatorialMap random_disk(int n, int boundary, uint64_t seed);

// Inserts a new vertex inside face f, joined to its three corners.
void insert_vertex_in_face(CombinatorialMap& m, int face);

// Flips a random sample of inner edges (both faces triangles, no loops
// created); preserves genus. Faces with an id below `protect` never change.
void random_flips(CombinatorialMap& m, int count, uint64_t seed, int protect_face = -1);

}  // namespace twg
