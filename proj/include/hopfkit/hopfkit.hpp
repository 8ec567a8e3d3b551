#pragma once

#include "hopfkit/scalar.hpp"
#include "hopfkit/sparse.hpp"
#include "hopfkit/sparse_solve.hpp"
#include "hopfkit/dense.hpp"
#include "hopfkit/multi_index.hpp"
#include "hopfkit/report.hpp"
#include "hopfkit/algebra.hpp"
#include "hopfkit/tensor.hpp"
#include "hopfkit/hopf.hpp"
#include "hopfkit/qt.hpp"
#include "hopfkit/constructions.hpp"
#include "hopfkit/en_family.hpp"
#include "hopfkit/cocycle.hpp"
#include "hopfkit/twists.hpp"
#include "hopfkit/zsq.hpp"
#include "hopfkit/search.hpp"
#include "hopfkit/operator.hpp"
#include "hopfkit/lazy_operator.hpp"
#include "hopfkit/ydmod.hpp"
#include "hopfkit/twisted.hpp"
#include "hopfkit/fedosov.hpp"
#include "hopfkit/io.hpp"
