/* TEMPLATE GENERATED TESTCASE FILE
Filename: CWE401_Memory_Leak__new_int_01.cpp
Label Definition File: CWE401_Memory_Leak__new.label.xml
Template File: sources-sinks-01.tmpl.cpp
*/
/*
 * @description
 * CWE: 401 Memory Leak
 * BadSource:  Allocate data using new
 * Sinks:
 *    BadSink : no deallocation of data
 * Flow Variant: 01 Baseline
 *
 * */

#include "std_testcase.h"

#ifndef _WIN32
#include <wchar.h>
#endif

namespace CWE401_Memory_Leak__new_int_01
{

static const int kBase = 5;

#ifndef OMITBAD

void bad()
{
    int * data;
    data = NULL;
    /* POTENTIAL FLAW: Allocate memory on the heap */
    data = new int;
    /* Initialize and make use of data */
    *data = kBase;
    printIntLine(*data);
    /* POTENTIAL FLAW: No deallocation */
    ; /* empty statement needed for some flow variants */
}

#endif /* OMITBAD */

#ifndef OMITGOOD

static void goodB2G()
{
    int * data;
    data = NULL;
    data = new int;
    *data = kBase;
    printIntLine(*data);
    /* FIX: Deallocate memory */
    delete data;
}

void good()
{
    goodB2G();
}

#endif /* OMITGOOD */

} /* close namespace */

/* Below is the main(). */
#ifdef INCLUDEMAIN

using namespace CWE401_Memory_Leak__new_int_01; /* so that we can use good and bad easily */

int main(int argc, char * argv[])
{
    srand( (unsigned)time(NULL) );
#ifndef OMITGOOD
    good();
#endif /* OMITGOOD */
#ifndef OMITBAD
    bad();
#endif /* OMITBAD */
    return 0;
}

#endif
