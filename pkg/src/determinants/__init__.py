# Matrix, polynomial and determinant modules
