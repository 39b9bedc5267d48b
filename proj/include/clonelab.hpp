#pragma once

#include "clonelab/atom.hpp"
#include "clonelab/bits.hpp"
#include "clonelab/carrier.hpp"
#include "clonelab/embeddings.hpp"
#include "clonelab/errors.hpp"
#include "clonelab/galois.hpp"
#include "clonelab/group.hpp"
#include "clonelab/json_io.hpp"
#include "clonelab/mcont.hpp"
#include "clonelab/mterm.hpp"
#include "clonelab/operation.hpp"
#include "clonelab/operation_set.hpp"
#include "clonelab/partial.hpp"
#include "clonelab/relation.hpp"
#include "clonelab/report.hpp"
#include "clonelab/version.hpp"
