#pragma once

#include "tkos/errors.hpp"
#include "tkos/cyclotomic.hpp"
#include "tkos/poly.hpp"
#include "tkos/indexset.hpp"
#include "tkos/group.hpp"
#include "tkos/clifford.hpp"
#include "tkos/parse.hpp"
#include "tkos/lgmodel.hpp"
#include "tkos/linalg.hpp"
#include "tkos/koszul.hpp"
#include "tkos/mf.hpp"
#include "tkos/twist.hpp"
#include "tkos/kosproj.hpp"
#include "tkos/product.hpp"
#include "tkos/invariant.hpp"
#include "tkos/demo.hpp"
