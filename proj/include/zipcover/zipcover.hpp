#ifndef zipcover_zipcover_hpp
#define zipcover_zipcover_hpp

#include "zipcover/error.hpp"
#include "zipcover/index_set.hpp"
#include "zipcover/graph.hpp"
#include "zipcover/filter.hpp"
#include "zipcover/compatibility.hpp"
#include "zipcover/zipper.hpp"
#include "zipcover/prescription.hpp"
#include "zipcover/clique_cover.hpp"
#include "zipcover/augmentation.hpp"
#include "zipcover/mzcc.hpp"
#include "zipcover/instance_gen.hpp"
#include "zipcover/io.hpp"
#include "zipcover/dot.hpp"

#endif /* zipcover_zipcover_hpp */
